"""Command-line front end.

Every command prints human-readable lines, machine-readable ``RESULT key=value``
lines and a closing ``SUMMARY`` line. Exit codes: 0 success, 1 mathematical
failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import envelope as env
from .exactlin import parse_scalar
from .graded import GradedAlgebra
from .guards import SizeGuardError
from .homology import CONVENTION, NotAComplexError, chain_complex, check_d_squared, homology_ranks
from .lifting import (NAryHom, NotHomomorphismError, WellDefinednessError, envelope_functor, image_subalgebra,
                      lift_hom)
from .nary_core import NAryAlgebra, check_associativity, is_j_commutative
from . import nsemigroup as nsg
from .nsemigroup import (NSemigroupTable, TernaryGroup, build_sg_envelope, check_nsg_associativity,
                         check_ternary_group, conjugation_hom_check, search_group_embedding)
from .specfile import (IdealSpec, MapSpec, SpecSyntaxError, ideal_word_vectors, map_images, parse_element,
                       parse_spec)


class UsageError(Exception):
    pass


class Report:
    def __init__(self, out):
        self.out = out

    def info(self, text: str) -> None:
        print(text, file=self.out)

    def result(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        print(f"RESULT {key}={value}", file=self.out)

    def summary(self, text: str) -> None:
        print(f"SUMMARY {text}", file=self.out)


def _load(path: str) -> Dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return parse_spec(text)


def _pick(objects: Dict, kinds, name: Optional[str] = None):
    if name is not None:
        if name not in objects:
            raise UsageError(f"no object named {name!r}")
        obj = objects[name]
        if not isinstance(obj, kinds):
            raise UsageError(f"{name} has the wrong kind for this command")
        return obj
    for obj in objects.values():
        if isinstance(obj, kinds):
            return obj
    raise UsageError("file contains no suitable object")


def cmd_check_assoc(args, rep: Report) -> int:
    obj = _pick(_load(args.file), (NAryAlgebra, NSemigroupTable, TernaryGroup), args.object)
    if isinstance(obj, NAryAlgebra):
        r = check_associativity(obj)
        witness = r.first_violation and " ".join(obj.labels[i] for i in r.first_violation[0])
    else:
        table = obj.semigroup if isinstance(obj, TernaryGroup) else obj
        r = check_nsg_associativity(table)
        witness = r.first_violation and " ".join(table.elements[i] for i in r.first_violation[0])
    rep.result("assoc", "pass" if r else "fail")
    if not r:
        i, j = r.first_violation[1:]
        rep.result("assoc.witness", f"{witness.replace(' ', '*')}@{i},{j}")
        rep.summary(f"{obj.name}: associativity fails on ({witness}) at positions {i},{j}")
        return 1
    rep.summary(f"{obj.name}: fully associative")
    return 0


def cmd_envelope_build(args, rep: Report) -> int:
    objects = _load(args.file)
    A = _pick(objects, NAryAlgebra, args.object)
    E = env.build_envelope(A, args.closure)
    rep.info(f"# envelope of {A.name}, dimensions at closure depth {args.closure}")
    for d in E.degrees():
        rep.info(f"#   degree {d}: {E.components[d].dim} = {E.components[d].ambient_dim} - {E.components[d].relations.rank}")
    rep.result("envelope.dims", E.dims())
    rep.result("envelope.closure_depth", args.closure)
    rep.result("envelope.relations.dims", [E.components[d].relations.rank for d in E.degrees()])
    if args.check:
        bad = env.well_definedness_failures(E, limit=1)
        assoc = E.graded.check_associativity()
        rep.result("envelope.well_defined", not bad)
        rep.result("envelope.associative", assoc is None)
        if bad or assoc is not None:
            rep.summary(f"{A.name}: envelope product inconsistent at closure depth {args.closure}")
            return 1
    rep.summary(f"{A.name}: envelope dims {','.join(map(str, E.dims()))} at closure depth {args.closure}")
    return 0


def cmd_envelope_quotient(args, rep: Report) -> int:
    objects = _load(args.file)
    spec = _pick(objects, IdealSpec, args.ideal)
    A = objects[spec.obj]
    E = env.build_envelope(A, args.closure)
    gens = [E.element(wv) for _, wv in ideal_word_vectors(spec, A)]
    I = env.ideal_closure(E, gens)
    avoids = env.ideal_avoids_image(E, I)
    rep.result("envelope.dims", E.dims())
    rep.result("envelope.closure_depth", args.closure)
    rep.result("ideal.dims", I.dims())
    rep.result("ideal.avoids_image", avoids)
    if not avoids:
        rep.summary(f"ideal {spec.name} meets the image of {A.name}; no embedding into the quotient")
        return 1
    Q = env.quotient_envelope(E, I)
    rep.result("quotient.dims", Q.dims())
    rep.summary(f"O({A.name})/{spec.name} has dims {','.join(map(str, Q.dims()))}")
    return 0


def cmd_envelope_annihilate(args, rep: Report) -> int:
    objects = _load(args.file)
    A = _pick(objects, NAryAlgebra, args.object)
    E = env.build_envelope(A, args.closure)
    try:
        wv = parse_element(args.element, A)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    d, x = E.element(wv)
    target = E.graded
    if args.ideal:
        spec = _pick(objects, IdealSpec, args.ideal)
        I = env.ideal_closure(E, [E.element(w) for _, w in ideal_word_vectors(spec, A)])
        target = env.quotient_envelope(E, I, check=False)
        x = {target.labels[d].index(E.graded.labels[d][i]): c for i, c in I.parts[d].reduce(x).items()}
    ok = env.annihilator_check(target, d, x)
    rep.result("annihilator", ok)
    rep.result("annihilator.degree", d)
    rep.summary(f"element {'is' if ok else 'is not'} annihilated from both sides")
    return 0 if ok else 1


def cmd_lift(args, rep: Report) -> int:
    objects = _load(args.file)
    spec = _pick(objects, MapSpec, args.map)
    A, M = objects[spec.source], objects[spec.target]
    if not isinstance(A, NAryAlgebra) or not isinstance(M, GradedAlgebra):
        raise UsageError("lift needs a map from an algebra to a gradedalgebra")
    lift = lift_hom(A, M, map_images(spec, objects), args.closure)
    report = image_subalgebra(lift)
    mult = lift.is_multiplicative()
    rep.result("envelope.closure_depth", args.closure)
    rep.result("lift.image.dims", report.image_dims)
    rep.result("lift.kernel.dims", report.kernel_dims)
    rep.result("lift.commutes", lift.commutes)
    rep.result("lift.multiplicative", mult)
    ok = lift.commutes and mult and report.consistent
    rep.summary(f"lift of {spec.name} {'commutes' if ok else 'FAILS'}")
    return 0 if ok else 1


def cmd_functor(args, rep: Report) -> int:
    objects = _load(args.file)
    spec = _pick(objects, MapSpec, args.map)
    A, B = objects[spec.source], objects[spec.target]
    if not isinstance(A, NAryAlgebra) or not isinstance(B, NAryAlgebra):
        raise UsageError("functor needs a map between algebras")
    phi = NAryHom(A, B, map_images(spec, objects))
    hom = envelope_functor(phi, args.closure)
    ranks = hom.ranks()
    rep.result("envelope.closure_depth", args.closure)
    rep.result("functor.ranks", ranks)
    rep.result("functor.injective", [str(r == s).lower() for r, s in zip(ranks, hom.source.dims())])
    rep.result("functor.commutes", hom.commutes)
    rep.summary(f"O({spec.name}) computed")
    return 0 if hom.commutes else 1


def cmd_homology(args, rep: Report) -> int:
    objects = _load(args.file)
    A = _pick(objects, NAryAlgebra, args.object)
    rep.info(f"# convention: {CONVENTION}")
    cc = chain_complex(A, args.kmax)
    d2 = check_d_squared(A, args.kmax, cc)
    for k in sorted(d2.zero):
        rep.result(f"homology.d2zero.k{k}", d2.zero[k])
    if not d2.all_zero:
        if A.n % 2 == 0:
            rep.summary(f"{A.name}: d^2 != 0 for even n")
            return 1
        rep.result("homology.complex", False)
        rep.summary(f"{A.name}: n = {A.n} is odd; d^2 != 0 reported, ranks not computed")
        return 0
    for k, h in enumerate(homology_ranks(A, args.kmax)):
        rep.result(f"homology.h{k}", h)
    rep.summary(f"{A.name}: complex verified up to k = {args.kmax}")
    return 0


def cmd_sg_envelope(args, rep: Report) -> int:
    objects = _load(args.file)
    T = _pick(objects, (NSemigroupTable, TernaryGroup), args.object)
    table = T.semigroup if isinstance(T, TernaryGroup) else T
    rep_assoc = check_nsg_associativity(table)
    if not rep_assoc:
        rep.result("assoc", "fail")
        rep.summary(f"{T.name} is not associative")
        return 1
    E = build_sg_envelope(table, args.maxlen)
    rep.result("sg.maxlen", E.max_length)
    for d, c in enumerate(E.counts(), 1):
        rep.result(f"sg.classes.deg{d}", c)
    ok = E.counts()[0] == table.order
    rep.summary(f"{T.name}: classes per degree {','.join(map(str, E.counts()))} up to length {E.max_length}")
    return 0 if ok else 1


def cmd_tg_check(args, rep: Report) -> int:
    G = _pick(_load(args.file), TernaryGroup, args.object)
    r = check_ternary_group(G)
    rep.result("tg.axioms", "pass" if r.passed else "fail")
    if not r.passed:
        rep.summary(f"{G.name}: axiom fails ({r.witness[0]})")
        return 1
    conj = [conjugation_hom_check(G, g) for g in range(G.order)]
    rep.result("tg.conjugation.bijective", all(c.passed and c.bijective for c in conj))
    rep.result("tg.conjugation.trivial", all(c.identity for c in conj))
    rep.summary(f"{G.name}: ternary group of order {G.order}")
    return 0


def cmd_tg_embed(args, rep: Report) -> int:
    G = _pick(_load(args.file), TernaryGroup, args.object)
    try:
        r = search_group_embedding(G, args.max_order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.result("tg.embed.found", r.found)
    if r.found:
        rep.result("tg.embed.order", r.group.order)
        rep.result("tg.embed.cyclic", nsg.is_cyclic(r.group))
        rep.info("# degree 1: " + " ".join(r.group.elements[i] for i in range(r.group.order) if r.grading[i] == 1))
        rep.summary(f"{G.name} embeds in a Z_2-graded group of order {r.group.order}")
    else:
        rep.result("tg.embed.exhausted_order", r.exhausted_order)
        rep.summary(f"{G.name}: no embedding up to order {r.max_order} ({r.reason})")
    return 0


def cmd_jcomm(args, rep: Report) -> int:
    A = _pick(_load(args.file), NAryAlgebra, args.object)
    try:
        j = parse_scalar(args.j, "Qw")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        ok = is_j_commutative(A, j)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep.result("jcomm", ok)
    rep.summary(f"{A.name} {'is' if ok else 'is not'} {args.j}-commutative")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="naryenv", description="n-ary algebras and their graded envelopes")
    sub = p.add_subparsers(dest="command", required=True)

    def add(parser, name, func, **kw):
        sp = parser.add_parser(name, **kw)
        sp.add_argument("file")
        sp.add_argument("--object", default=None)
        sp.set_defaults(func=func)
        return sp

    check = sub.add_parser("check").add_subparsers(dest="what", required=True)
    add(check, "assoc", cmd_check_assoc)

    envp = sub.add_parser("envelope").add_subparsers(dest="what", required=True)
    sp = add(envp, "build", cmd_envelope_build)
    sp.add_argument("--closure", type=int, default=2)
    sp.add_argument("--check", action="store_true", help="also verify well-definedness and associativity")
    sp = add(envp, "quotient", cmd_envelope_quotient)
    sp.add_argument("--ideal", default=None)
    sp.add_argument("--closure", type=int, default=2)
    sp = add(envp, "annihilate", cmd_envelope_annihilate)
    sp.add_argument("--element", required=True)
    sp.add_argument("--ideal", default=None)
    sp.add_argument("--closure", type=int, default=2)

    sp = add(sub, "lift", cmd_lift)
    sp.add_argument("--map", default=None)
    sp.add_argument("--closure", type=int, default=2)
    sp = add(sub, "functor", cmd_functor)
    sp.add_argument("--map", default=None)
    sp.add_argument("--closure", type=int, default=2)
    sp = add(sub, "homology", cmd_homology)
    sp.add_argument("--kmax", type=int, default=2)

    sg = sub.add_parser("sg").add_subparsers(dest="what", required=True)
    sp = add(sg, "envelope", cmd_sg_envelope)
    sp.add_argument("--maxlen", type=int, default=None)

    tg = sub.add_parser("tg").add_subparsers(dest="what", required=True)
    add(tg, "check", cmd_tg_check)
    sp = add(tg, "embed-search", cmd_tg_embed)
    sp.add_argument("--max-order", type=int, default=12)

    sp = add(sub, "jcomm", cmd_jcomm)
    sp.add_argument("--j", required=True)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    rep = Report(out)
    for name in ("closure", "kmax"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return 2
    try:
        return args.func(args, rep)
    except (SpecSyntaxError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        rep.summary(f"usage error: {exc}")
        return 2
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        rep.summary(f"size guard: {exc}")
        return 2
    except (env.NotAssociativeError, NotHomomorphismError, WellDefinednessError, NotAComplexError,
            env.NotSubalgebraError, nsg.NotAssociativeError, nsg.NotHomomorphismError) as exc:
        rep.summary(f"failure: {exc}")
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        rep.summary(f"usage error: {exc}")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
