import logging
from typing import Callable, Dict, List, Tuple

from app.models.errors import UnsupportedDescriptor
from app.models.field_spec import FieldSpec
from app.models.group_descriptor import GroupDescriptor, GroupFamily
from app.models.verdict import PredicateCheck, Verdict, VerdictKind, VerdictReason
from app.services import field_service
from app.services.field_service import characteristic

logger = logging.getLogger(__name__)

SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")

PREDICATES: Dict[str, Callable[..., bool]] = {
    "contains_zeta": field_service.contains_zeta,
    "contains_zeta_plus": field_service.contains_zeta_plus,
    "fp_degree_at_least": field_service.fp_degree_at_least,
    "contains_fq": field_service.contains_fq,
    "cardinality_at_least": field_service.cardinality_at_least,
    "characteristic_is": lambda spec, c: characteristic(spec) == c,
    "equals_characteristic": lambda spec, n: characteristic(spec) == n,
    "equals": lambda spec, a, b: a == b,
    "is_odd": lambda spec, n: n % 2 == 1,
}

Decision = Tuple[VerdictKind, VerdictReason]


def _sub(n: int) -> str:
    return str(n).translate(SUBSCRIPTS)


def _describe(spec: FieldSpec, predicate: str, args: List[int], value: bool) -> str:
    if predicate == "contains_zeta":
        return f"ζ{_sub(args[0])} {'∈' if value else '∉'} K"
    if predicate == "contains_zeta_plus":
        n = _sub(args[0])
        return f"ζ{n}+ζ{n}⁻¹ {'∈' if value else '∉'} K"
    if predicate == "fp_degree_at_least":
        return f"[K:F{_sub(characteristic(spec))}] {'≥' if value else '<'} {args[0]}"
    if predicate == "contains_fq":
        return f"K {'⊃' if value else '⊅'} F{_sub(args[0])}"
    if predicate == "cardinality_at_least":
        return f"|K| {'≥' if value else '<'} {args[0]}"
    if predicate == "characteristic_is":
        return f"char K {'=' if value else '≠'} {args[0]}"
    if predicate == "equals_characteristic":
        return f"n = {args[0]} {'=' if value else '≠'} char K"
    if predicate == "equals":
        return f"n = {args[0]}" if value else f"n = {args[0]} ≠ {args[1]}"
    return f"n = {args[0]} is {'odd' if value else 'even'}"


def _check(spec: FieldSpec, predicate: str, *args: int) -> PredicateCheck:
    value = bool(PREDICATES[predicate](spec, *args))
    text = _describe(spec, predicate, list(args), value)
    return PredicateCheck(predicate=predicate, args=list(args), value=value, text=text)


def reeval_check(spec: FieldSpec, check: PredicateCheck) -> bool:
    """Recomputes a recorded predicate from its name and arguments"""
    return bool(PREDICATES[check.predicate](spec, *check.args))


# ---------------------------------------------------------------- canonical forms


def _rewrite(d: GroupDescriptor, char: int) -> GroupDescriptor:
    family, params = d.family, d.params
    if family == GroupFamily.cyclic and params[0] == 1:
        return GroupDescriptor.trivial()
    if family == GroupFamily.dihedral and params[0] == 1:
        return GroupDescriptor.cyclic(2)
    if family == GroupFamily.binary_dihedral and params[0] == 1:
        return GroupDescriptor.cyclic(4)
    if family == GroupFamily.elem_abelian:
        p, r = params
        if r == 1:
            return GroupDescriptor.cyclic(p)
        if (p, r) == (2, 2):
            return GroupDescriptor.dihedral(2)
    if family == GroupFamily.gnpr:
        n, p, r = params
        if n == 1:
            return GroupDescriptor.cyclic(p) if r == 1 else GroupDescriptor.elem_abelian(p, r)
        if n == 2 and r == 1:
            return GroupDescriptor.cyclic(2 * p)
    if family == GroupFamily.sl2 and params[0] == 2:
        return GroupDescriptor.dihedral(3)
    if family == GroupFamily.alt:
        if params[0] == 3:
            return GroupDescriptor.cyclic(3)
        if params[0] == 4 and char == 2:
            return GroupDescriptor.gnpr(3, 2, 2)
        if params[0] == 5 and char == 2:
            return GroupDescriptor.sl2(4)
    if family == GroupFamily.sym and params[0] == 3:
        return GroupDescriptor.dihedral(3)
    return d


def canonicalize_descriptor(d: GroupDescriptor, char: int) -> GroupDescriptor:
    """Rewrites d to the family the classification theorems address, up to a fixpoint"""
    d.validate_parameters()
    while True:
        rewritten = _rewrite(d, char)
        if rewritten == d:
            return d
        logger.debug(f"{d.display_name()} -> {rewritten.display_name()} (char {char})")
        d = rewritten


# ---------------------------------------------------------------- decision table


def _conditions(theorem: str, checks: List[PredicateCheck], axiom_backed: bool = False) -> Decision:
    failed = [c for c in checks if not c.value]
    kind = VerdictKind.ed_at_least_two if failed else VerdictKind.ed_one
    reason = VerdictReason(
        theorem=theorem,
        message=", ".join(c.text for c in (failed or checks)),
        checks=checks,
        axiom_backed=axiom_backed and bool(failed),
    )
    return kind, reason


def _not_in_list(spec: FieldSpec, d: GroupDescriptor, char: int, detail: str = "") -> Decision:
    message = f"{d.display_name()} is not among the groups of characteristic {char}"
    reason = VerdictReason(
        theorem="Theorem 1.2",
        message=f"{message}; {detail}" if detail else message,
        checks=[_check(spec, "characteristic_is", char)],
        axiom_backed=True,
    )
    return VerdictKind.ed_at_least_two, reason


def _contains_klein_four(spec: FieldSpec, d: GroupDescriptor) -> Decision:
    check = _check(spec, "contains_zeta", 2)
    reason = VerdictReason(
        theorem="Theorem 2.8",
        message=f"{d.display_name()} contains (Z/2Z)^2 and {check.text}",
        checks=[check],
        axiom_backed=True,
    )
    return VerdictKind.ed_at_least_two, reason


def _decide_cyclic(spec: FieldSpec, n: int, char: int) -> Decision:
    if char and n % char == 0:
        return _conditions("Theorem 1.3", [_check(spec, "equals_characteristic", n)])
    if n % 2:
        return _conditions("Theorem 1.3", [_check(spec, "contains_zeta_plus", n)])
    return _conditions("Theorem 1.3", [_check(spec, "contains_zeta", n)])


def _decide_dihedral(spec: FieldSpec, n: int, char: int) -> Decision:
    if char == 2 and n % 2 == 0:
        checks = [_check(spec, "equals", n, 2), _check(spec, "cardinality_at_least", 4)]
        return _conditions("Theorem 1.4", checks)
    checks = [_check(spec, "is_odd", n)]
    if n % 2 == 0:
        return _conditions("Theorem 1.4", checks)
    if char and n % char == 0:
        checks.append(_check(spec, "equals_characteristic", n))
    else:
        checks.append(_check(spec, "contains_zeta_plus", n))
    return _conditions("Theorem 1.4", checks)


def _decide_gnpr(spec: FieldSpec, d: GroupDescriptor, char: int) -> Decision:
    n, p, r = d.params
    if char != p:
        return _not_in_list(spec, d, char)
    if n % 2 == 0:
        return _conditions("Lemma 7.3", [_check(spec, "is_odd", n)], axiom_backed=True)
    checks = [
        _check(spec, "is_odd", n),
        _check(spec, "contains_zeta", n),
        _check(spec, "fp_degree_at_least", r),
    ]
    return _conditions("Theorem 1.5", checks)


def _decide_elem_abelian(spec: FieldSpec, d: GroupDescriptor, char: int) -> Decision:
    p, r = d.params
    if char == p:
        return _conditions("Lemma 2.7", [_check(spec, "fp_degree_at_least", r)])
    zeta = _check(spec, "contains_zeta", p)
    if zeta.value:
        reason = VerdictReason(
            theorem="Theorem 2.8",
            message=f"ed_K({d.display_name()}) = {r} since {zeta.text}",
            checks=[zeta],
            axiom_backed=True,
        )
        return VerdictKind.ed_at_least_two, reason
    return _not_in_list(spec, d, char)


def _decide_canonical(spec: FieldSpec, d: GroupDescriptor, char: int) -> Decision:
    family, params = d.family, d.params
    if family == GroupFamily.cyclic:
        return _decide_cyclic(spec, params[0], char)
    if family == GroupFamily.dihedral:
        return _decide_dihedral(spec, params[0], char)
    if family == GroupFamily.gnpr:
        return _decide_gnpr(spec, d, char)
    if family == GroupFamily.elem_abelian:
        return _decide_elem_abelian(spec, d, char)
    if family == GroupFamily.sl2:
        if char == 2 and params[0] % 2 == 0:
            return _conditions("Theorem 1.6", [_check(spec, "contains_fq", params[0])])
        return _not_in_list(spec, d, char)
    if family == GroupFamily.alt:
        return _contains_klein_four(spec, d)
    if family == GroupFamily.sym:
        if char == 2:
            return _not_in_list(spec, d, char, "its Sylow 2-subgroup is not elementary abelian")
        return _contains_klein_four(spec, d)
    if family == GroupFamily.binary_dihedral:
        return _not_in_list(spec, d, char)
    raise UnsupportedDescriptor(f"{d} has no entry in the decision table")


def decide(spec: FieldSpec, descriptor: GroupDescriptor) -> Verdict:
    char = characteristic(spec)
    canonical = canonicalize_descriptor(descriptor, char)
    if canonical.family == GroupFamily.trivial:
        kind = VerdictKind.ed_zero
        reason = VerdictReason(theorem="ed_K(G) = 0 iff G = {1}", message="G = {1}")
    else:
        kind, reason = _decide_canonical(spec, canonical, char)
    if canonical != descriptor:
        reason.via = f"{descriptor.display_name()} ≅ {canonical.display_name()}"
    verdict = Verdict(
        kind=kind,
        field=str(spec),
        group=str(descriptor),
        canonical=str(canonical),
        reason=reason,
    )
    logger.info(f"{spec}, {descriptor}: {verdict.summary()}")
    return verdict
