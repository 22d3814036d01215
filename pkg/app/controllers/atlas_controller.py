import json
from typing import List

from app.models.command import Command, CommandResult
from app.models.dickson_type import Atlas
from app.repository.atlas_repository import AtlasRepository
from app.services import classify_service


class AtlasController:
    """
    Controller for the atlas command
    """

    def __init__(self):
        self.atlas_repository = AtlasRepository()

    def atlas(self, command: Command) -> CommandResult:
        result = classify_service.atlas(command.q, cap=command.cap)
        lines = self._format(result)
        if command.out:
            path = self.atlas_repository.save(result, command.out)
            lines.append(f"atlas written to {path}")
        return CommandResult(payload=json.loads(result.json()), text="\n".join(lines))

    @staticmethod
    def _format(result: Atlas) -> List[str]:
        lines = [
            f"SL2(F_{result.q}): {len(result.classes)} classes, "
            f"{result.total_subgroups} subgroups (pair-closure oracle {result.oracle_count})"
        ]
        for c in result.classes:
            notes = f"  also {', '.join(c.notes)}" if c.notes else ""
            lines.append(f"{c.order:>6}  x{c.conjugates:<4} {c.type}{notes}")
        return lines
