from app.models.dickson_type import Atlas
from app.repository.base_repository import BaseRepository


class AtlasRepository(BaseRepository):
    def __init__(self):
        super().__init__(Atlas)
