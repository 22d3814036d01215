from app.models.certificate import Certificate, CertificateSchema
from app.repository.base_repository import BaseRepository, PathLike


class CertificateRepository(BaseRepository):
    def __init__(self):
        super().__init__(CertificateSchema)

    def load_certificate(self, path: PathLike) -> Certificate:
        return self.get_by_path(path).to_domain()
