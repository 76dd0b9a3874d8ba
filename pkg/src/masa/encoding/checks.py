"""Executable checks of the encoding: support agreement, unit norms and the
sqrt(2) coefficient relation, commutation of the step operator with the
transition function, and the iterated-exponential sizing bound.

Every verifier returns a :class:`~masa.report.Report` with one entry per
comparison; failures carry the offending values.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations

from ..errors import DomainError, ResourceLimitError
from ..group_algebra import inner, norm, support
from ..machine import Machine, final_config, halt_space, initial_config, step
from ..report import Report
from .embed import (
    BasisAssignment,
    assign_basis,
    assign_basis_union,
    basis_vector,
    embed_at,
    embed_config,
    embed_input,
    step_operator,
)
from .tree import VirtualTree, build_virtual_tree, survey

TOL = 1e-12

TRANSITIONS_NOTE = "h_x counts transitions (|S(x)| - 1); k_x = h - h_x"
TRUNCATION_NOTE = "operators act on the finite truncation l2(G_N); no embedding into the hyperfinite factor is built"
EXPONENT_NOTE = (
    "coefficient relation advances x' by k + h_x' - h_x steps so both vectors sit on one tree level; "
    "pairs with a negative exponent are skipped"
)


def _iterates(vt: VirtualTree, ba: BasisAssignment, x) -> list:
    """mu_N^k [[x]] for k = 0..h_x, by repeated left translation."""
    v = embed_input(vt, ba, x)
    out = [v]
    for _ in range(vt.branch(x).h):
        v = step_operator(ba, v)
        out.append(v)
    return out


def _tag(vt: VirtualTree) -> str:
    return f"y={vt.y} L={vt.L}"


def verify_support_agreement(vt: VirtualTree, ba: BasisAssignment) -> Report:
    """Equal-height inputs have equal supports, before and after k steps."""
    rep = Report(f"support agreement {_tag(vt)}", notes=[TRANSITIONS_NOTE])
    its = {x: _iterates(vt, ba, x) for x in vt.inputs}
    pairs = [(x, xp) for x, xp in combinations(vt.inputs, 2) if vt.branch(x).h == vt.branch(xp).h]
    if not pairs:
        rep.add("support_agreement.vacuous", True, pairs=0)
    for x, xp in pairs:
        sa, sb = support(its[x][0]), support(its[xp][0])
        rep.add("support_agreement.input", sa == sb, x=x, x_prime=xp, supp_x=sa, supp_x_prime=sb)
        for k in range(vt.branch(x).h + 1):
            sa, sb = support(its[x][k]), support(its[xp][k])
            rep.add("support_agreement.iterate", sa == sb, x=x, x_prime=xp, k=k,
                    **({} if sa == sb else {"supp_x": sa, "supp_x_prime": sb}))
    return rep


def verify_norm_and_coefficients(vt: VirtualTree, ba: BasisAssignment) -> Report:
    """Unit norm of every iterate, and the sqrt(2) ratio between the own-branch
    coefficient and any other input's coefficient at the same node."""
    rep = Report(f"norm and coefficients {_tag(vt)}", notes=[TRANSITIONS_NOTE, EXPONENT_NOTE])
    its = {x: _iterates(vt, ba, x) for x in vt.inputs}
    for x in vt.inputs:
        for k, v in enumerate(its[x]):
            nv = norm(v)
            rep.add("unit_norm.iterate", abs(nv - 1) <= TOL, TOL, x=x, k=k, norm=nv)
    skipped = 0
    for x, xp in permutations(vt.inputs, 2):
        bx, bxp = vt.branch(x), vt.branch(xp)
        for k in range(bx.h + 1):
            e = k + bxp.h - bx.h
            if e < 0:
                skipped += 1
                continue
            node = vt.branch_nodes(x)[bx.k + k]
            probe = basis_vector(vt, ba, node, x)
            own = inner(its[x][k], probe)
            other = inner(its[xp][e], probe)
            err = abs(own - math.sqrt(2) * other)
            rep.add("coefficient_ratio", err <= TOL, TOL, x=x, x_prime=xp, k=k, exponent=e,
                    own=own.real, other=other.real, error=err)
    rep.add("coefficient_ratio.skipped", True, count=skipped)
    return rep


def verify_simulation(M: Machine, x, vt: VirtualTree, ba: BasisAssignment) -> Report:
    """The step operator tracks the transition function along S(x), and h_x
    steps from [[x]] reach the support of the final configuration."""
    x = tuple(x)
    rep = Report(f"simulation x={x} {_tag(vt)}", notes=[TRANSITIONS_NOTE, TRUNCATION_NOTE])
    b = vt.branch(x)
    c = initial_config(M, x)
    for i in range(b.h):
        nxt = step(M, c)
        try:
            lhs = step_operator(ba, embed_config(vt, ba, c, x))
            rhs = embed_config(vt, ba, nxt, x)
            ok = lhs.isclose(rhs, TOL)
        except DomainError as exc:
            rep.add("simulation.transition", False, x=x, i=i, detail=str(exc))
        else:
            rep.add("simulation.transition", ok, TOL, x=x, i=i,
                    **({} if ok else {"lhs": lhs.triples(), "rhs": rhs.triples()}))
        c = nxt
    y = b.computation.output
    v = embed_input(vt, ba, x)
    for _ in range(b.h):
        v = step_operator(ba, v)
    reached, target = support(v), support(embed_config(vt, ba, final_config(y), x))
    rep.add("simulation.final_support", reached == target, x=x, k=b.h, reached=reached, target=target)
    # diagram: run the machine h_x steps then embed, versus embed then translate h_x times
    start = initial_config(M, x)
    top = embed_config(vt, ba, start, x)
    for _ in range(b.h):
        top = step_operator(ba, top)
    c = start
    for _ in range(b.h):
        c = step(M, c)
    left = support(embed_config(vt, ba, c, x))
    rep.add("simulation.diagram", left == support(top), x=x, k=b.h, machine_then_embed=left, embed_then_translate=support(top))
    return rep


def verify_step_commutation(vt: VirtualTree, ba: BasisAssignment) -> Report:
    """One generator step maps the embedding at step t to the one at t+1, on
    every branch including its virtual prefix."""
    rep = Report(f"step commutation {_tag(vt)}")
    for x in vt.inputs:
        for t in range(vt.h):
            lhs = step_operator(ba, embed_at(vt, ba, x, t))
            rhs = embed_at(vt, ba, x, t + 1)
            ok = lhs.isclose(rhs, TOL)
            rep.add("step_commutation", ok, TOL, x=x, t=t,
                    **({} if ok else {"lhs": lhs.triples(), "rhs": rhs.triples()}))
    return rep


def verify_normalization(vt: VirtualTree, ba: BasisAssignment) -> Report:
    rep = Report(f"normalization {_tag(vt)}")
    for x in vt.inputs:
        for t in range(vt.h + 1):
            v = embed_at(vt, ba, x, t)
            rep.add("unit_norm.config", abs(norm(v) - 1) <= TOL, TOL, x=x, t=t, norm=norm(v), terms=len(v.amplitudes))
        nv = norm(embed_input(vt, ba, x))
        rep.add("unit_norm.input", abs(nv - 1) <= TOL, TOL, x=x, norm=nv)
    return rep


def verify_uniformity(vt: VirtualTree, ba: BasisAssignment) -> Report:
    """Different inputs give equal supports at a level but different vectors."""
    rep = Report(f"uniformity {_tag(vt)}")
    for x, xp in combinations(vt.inputs, 2):
        for t in range(vt.h + 1):
            a, b = embed_at(vt, ba, x, t), embed_at(vt, ba, xp, t)
            rep.add("support_uniformity", support(a) == support(b), x=x, x_prime=xp, t=t)
            rep.add("nonuniform_amplitudes", a != b, x=x, x_prime=xp, t=t)
    return rep


def verify_tree(M: Machine, vt: VirtualTree, ba: BasisAssignment | None = None) -> Report:
    """Every per-tree check, in a fixed order."""
    ba = ba if ba is not None else assign_basis(vt)
    rep = Report(f"tree {M.name or M.digest()[:12]} {_tag(vt)} h={vt.h} branches={len(vt.branches)} N={ba.level}")
    rep.extend(verify_normalization(vt, ba))
    rep.extend(verify_step_commutation(vt, ba))
    rep.extend(verify_support_agreement(vt, ba))
    rep.extend(verify_norm_and_coefficients(vt, ba))
    rep.extend(verify_uniformity(vt, ba))
    for x in vt.inputs:
        rep.extend(verify_simulation(M, x, vt, ba))
    return rep


def verify_final_injectivity(M: Machine, trees) -> Report:
    """Final-configuration supports of trees with different outputs differ
    under one assignment built over all of them."""
    trees = list(trees)
    rep = Report(f"final-support injectivity {M.name}")
    if len(trees) < 2:
        rep.add("final_injectivity.vacuous", True, trees=len(trees))
        return rep
    bas = assign_basis_union(trees)
    finals = {}
    for vt, ba in zip(trees, bas):
        x = vt.inputs[0]
        finals[vt.y] = support(embed_config(vt, ba, final_config(vt.y), x))
    for y, yp in combinations(sorted(finals), 2):
        rep.add("final_injectivity", finals[y] != finals[yp], L=trees[0].L, y=y, y_prime=yp, N=bas[0].level)
    return rep


def trees_at_length(M: Machine, L: int, max_steps: int | None = None) -> list[VirtualTree]:
    s = survey(M, L, max_steps)
    return [build_virtual_tree(M, y, L, surveyed=s) for y in s.outputs()]


def iterated_exp(m: int, x: int) -> int:
    """2^[m](x): 2^[0](x) = x, 2^[m+1](x) = 2^(2^[m](x)); capped at 2^64."""
    if m < 0 or x < 0:
        raise DomainError(f"iterated_exp needs nonnegative arguments, got m={m}, x={x}")
    v = x
    for _ in range(m):
        if v > 64:
            raise ResourceLimitError(f"2^[{m}]({x}) exceeds 2^64")
        v = 2**v
    if v > 2**64:
        raise ResourceLimitError(f"2^[{m}]({x}) exceeds 2^64")
    return v


def kalmar_bound_check(M: Machine, m: int | None = None, L_max: int = 6, max_steps: int | None = None) -> Report:
    """Per nonempty tree with L <= L_max: the group hosting it, 2^N, is at
    most 2^[m](L)."""
    if m is None:
        m = M.kalmar_m
    if m is None:
        raise DomainError(f"machine {M.name!r} documents no iterated-exponential height m")
    rep = Report(f"sizing bound {M.name} m={m} L<={L_max}")
    for L in range(1, L_max + 1):
        bound = iterated_exp(m, L)
        for vt in trees_at_length(M, L, max_steps):
            N = assign_basis(vt).level
            space = max(halt_space(b.computation) for b in vt.branches)
            rep.add("sizing_bound", 2**N <= bound, L=L, y=vt.y, N=N, group_order=2**N, bound=bound, halt_space=space)
    return rep
