import logging
from typing import List, Optional, Tuple

from app.config.settings import get_settings
from app.models.certificate import Certificate, VerificationReport
from app.models.concrete_field import ConcreteField, FiniteFieldBase
from app.models.errors import InvalidDescriptor, InvalidGnprParams, NotEdOne
from app.models.field_spec import FieldKind, FieldSpec, RealizationRequirements
from app.models.finite_group import MatrixGroup
from app.models.group_descriptor import GroupDescriptor, GroupFamily
from app.models.mat2 import Mat2
from app.services.decision_service import canonicalize_descriptor, decide
from app.services.embedding_service import find_elementary_abelian_embedding
from app.services.field_service import build_realization, characteristic, embed, eta_element
from app.services.gnpr_service import make_gnpr_matrix, presentation_holds
from app.services.group_service import (
    SL2_LABELS,
    action_is_faithful,
    close_generated,
    make_abstract,
    sl2_generators,
)
from app.services.isomorphism_service import are_isomorphic
from app.services.matrix_service import moebius_formula

logger = logging.getLogger(__name__)

Generators = List[Tuple[str, Mat2]]


def realization_requirements(
    spec: FieldSpec, canonical: GroupDescriptor
) -> RealizationRequirements:
    """What the construction for a canonical descriptor needs from the field"""
    char = characteristic(spec)
    family, params = canonical.family, canonical.params
    roots, etas, fp_min, fq = (), (), 1, None
    if family == GroupFamily.cyclic:
        n = params[0]
        if n != char:
            roots, etas = ((), (n,)) if n % 2 else ((n,), ())
    elif family == GroupFamily.dihedral:
        n = params[0]
        if char == 2 and n == 2:
            fp_min = 2
        elif n != char:
            etas = (n,)
    elif family == GroupFamily.gnpr:
        n, _, r = params
        roots, fp_min = (n,), r
    elif family == GroupFamily.sl2:
        fq = params[0]
    elif family == GroupFamily.elem_abelian:
        fp_min = params[1]
    ambient = spec.k if spec.kind == FieldKind.finite else None
    return RealizationRequirements(
        char=char,
        roots_needed=roots,
        eta_needed=etas,
        fp_degree_min=fp_min,
        contains_fq=fq,
        ambient_degree=ambient,
    )


def _rotation(field: ConcreteField, n: int) -> Mat2:
    """T = [[0, -1], [1, eta_n]], of projective order n for odd n"""
    eta = eta_element(field, n)
    return Mat2(field, (field.zero, field.neg(field.one), field.one, eta.value))


def _unipotent(field: ConcreteField, b) -> Mat2:
    return Mat2(field, (field.one, b, field.zero, field.one))


def construct_generators(canonical: GroupDescriptor, field: ConcreteField) -> Generators:
    char = field.characteristic
    one, zero = field.one, field.zero
    family, params = canonical.family, canonical.params

    if family == GroupFamily.cyclic:
        n = params[0]
        if n == char:
            return [("sigma", _unipotent(field, field.neg(one)))]
        if n % 2:
            return [("sigma", _rotation(field, n))]
        zeta = field.primitive_nth_root(n)
        return [("sigma", Mat2(field, (zeta, zero, zero, one)))]

    if family == GroupFamily.dihedral:
        n = params[0]
        if char == 2 and n == 2:
            alpha = next(v for v in field.elements() if v not in (zero, one))
            return [("sigma", _unipotent(field, one)), ("tau", _unipotent(field, alpha))]
        if n == char:
            flip = Mat2(field, (one, zero, zero, field.neg(one)))
            return [("sigma", _unipotent(field, one)), ("tau", flip)]
        return [("sigma", _rotation(field, n)), ("tau", Mat2(field, (zero, one, one, zero)))]

    if family == GroupFamily.gnpr:
        return make_gnpr_matrix(*params, field).labelled_generators()

    if family == GroupFamily.sl2:
        return list(zip(SL2_LABELS, sl2_generators(field)))

    if family == GroupFamily.elem_abelian:
        p, r = params
        gens = find_elementary_abelian_embedding(p, r, field.size)
        if gens is None:
            raise InvalidDescriptor(f"(Z/{p}Z)^{r} does not embed over {field!r}")
        return [(f"sigma_{i}", m) for i, m in enumerate(gens, start=1)]

    raise InvalidDescriptor(f"no construction for {canonical}")


def action_note(generators: Generators) -> str:
    return "; ".join(f"{label}: {moebius_formula(m)}" for label, m in generators)


def certify(spec: FieldSpec, descriptor: GroupDescriptor) -> Certificate:
    """
    A faithful Möbius action of the group over a minimal realization field inside K, with
    its verification report attached
    """
    verdict = decide(spec, descriptor)
    if not verdict.is_ed_one:
        raise NotEdOne(f"{descriptor} over {spec}: {verdict.summary()}")
    char = characteristic(spec)
    canonical = canonicalize_descriptor(descriptor, char)
    # SL2(F_2) is decided as D3 but keeps its natural inclusion as the action
    natural_sl2 = descriptor.family == GroupFamily.sl2 and char == 2
    construction = descriptor if natural_sl2 else canonical
    field = build_realization(realization_requirements(spec, construction))
    generators = construct_generators(construction, field)
    certificate = Certificate(
        spec=spec,
        claimed=descriptor,
        canonical=canonical,
        realization=field,
        generators=generators,
        action_note=action_note(generators),
    )
    certificate.verification = verify(certificate)
    logger.info(f"certified {descriptor} over {spec} in {field!r}")
    return certificate


# ---------------------------------------------------------------- verification


def _dihedral_witness(group: MatrixGroup, n: int) -> bool:
    rotations = [x for x in range(group.order) if group.element_order(x) == n]
    for x in rotations:
        cyclic = group.closure([x])
        inverse = group.inv(x)
        for y in range(group.order):
            if y in cyclic or group.element_order(y) != 2:
                continue
            if group.conjugate(y, x) == inverse:
                return True
    return False


def _presentation_witness(group: MatrixGroup, canonical: GroupDescriptor) -> bool:
    family, params = canonical.family, canonical.params
    if family == GroupFamily.gnpr:
        try:
            return presentation_holds(group, params[0], params[1])
        except InvalidGnprParams:
            return False
    if family == GroupFamily.sl2:
        q = params[0]
        one = group.field.one
        return group.field.size == q and all(m.determinant().value == one for m in group.matrices)
    if family == GroupFamily.cyclic:
        return any(group.element_order(x) == params[0] for x in range(group.order))
    if family == GroupFamily.dihedral:
        return _dihedral_witness(group, params[0])
    if family == GroupFamily.elem_abelian:
        return group.is_abelian() and group.exponent() == params[0]
    return False


def realization_fits(certificate: Certificate) -> bool:
    """
    The realization has the characteristic of K, sits inside K when K is finite, and K passes
    the decision table for the claimed group
    """
    spec, field = certificate.spec, certificate.realization
    if field.characteristic != characteristic(spec):
        return False
    if spec.kind == FieldKind.finite:
        if not isinstance(field, FiniteFieldBase) or spec.k % field.k:
            return False
    return decide(spec, certificate.claimed).is_ed_one


def verify(certificate: Certificate, cap: Optional[int] = None) -> VerificationReport:
    """
    Recomputes order, isomorphism type and faithfulness from the generators alone and checks
    the realization against the field spec; any report stored on the certificate is ignored
    """
    claimed = certificate.claimed
    claimed.validate_parameters()
    closure = close_generated(
        certificate.matrices,
        cap=cap,
        labels=certificate.labels,
        name=str(claimed),
        field=certificate.realization,
    )
    expected = claimed.order()
    order_ok = closure.order == expected
    faithful_ok = action_is_faithful(closure)

    iso_cap = get_settings().iso_cap
    if expected <= iso_cap and closure.order <= iso_cap:
        method = "backtracking"
        iso_ok = are_isomorphic(closure, make_abstract(claimed), cap=iso_cap)
    else:
        method = "presentation"
        canonical = canonicalize_descriptor(claimed, certificate.realization.characteristic)
        iso_ok = order_ok and _presentation_witness(closure, canonical)

    report = VerificationReport(
        order_ok=order_ok,
        iso_ok=iso_ok,
        faithful_ok=faithful_ok,
        field_ok=realization_fits(certificate),
        iso_method=method,
        closure_order=closure.order,
    )
    logger.debug(f"verified {claimed} over {certificate.realization!r}: {report}")
    return report


def base_change(certificate: Certificate, target: FiniteFieldBase) -> Certificate:
    """The same action read over a finite field containing the realization"""
    generators = [
        (label, Mat2(target, [embed(e, target).value for e in m.entries()]))
        for label, m in certificate.generators
    ]
    changed = Certificate(
        spec=FieldSpec.finite(target.p, target.k),
        claimed=certificate.claimed,
        canonical=certificate.canonical,
        realization=target,
        generators=generators,
        action_note=action_note(generators),
    )
    changed.verification = verify(changed)
    return changed
