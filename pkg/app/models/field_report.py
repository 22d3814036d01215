from typing import Optional

from app.models.base import BaseSchema


class Lemma81Report(BaseSchema):
    q: int
    r: int
    zeta_order: int
    zeta_degree: int
    eta_degree: int

    @property
    def zeta_generates_fq2(self) -> bool:
        return self.zeta_degree == 2 * self.r

    @property
    def eta_generates_fq(self) -> bool:
        return self.eta_degree == self.r


class FieldInfoReport(BaseSchema):
    field: str
    characteristic: int
    n: Optional[int] = None
    contains_zeta: Optional[bool] = None
    # None when the characteristic divides n
    contains_zeta_plus: Optional[bool] = None
    fp_degree: Optional[str] = None
    lemma_8_1: Optional[Lemma81Report] = None
