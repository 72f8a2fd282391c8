"""Line-oriented input format: stanzas terminated by ``end``; ``#`` starts a comment.

::

    algebra <name>
    field Q | Qw
    n <int>
    dim <int>
    basis <lbl> ... <lbl>
    generators <lbl> ... <lbl>          # optional
    prod <lbl x n> : <coef> <lbl> [<coef> <lbl>]...
    end

    gradedalgebra <name>                # field, modulus, degree <d> <lbl>..., prod <lbl> <lbl> : ...
    nsemigroup <name>                   # n, elements, prod <lbl x n> : <lbl> (table must be total)
    ternarygroup <name>                 # elements, prod <a> <b> <c> : <lbl>, inverse <lbl> : <lbl>
    map <name> from <obj> to <obj>      # send <lbl> : <coef> <lbl> ...
    ideal <name> in <obj>               # gen <degree> : <coef> <word> ...   (word = a*b*c)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .exactlin import Scalar, format_scalar, parse_scalar, to_field
from .graded import GradedAlgebra, word_degree
from .nary_core import NAryAlgebra
from .nsemigroup import NSemigroupTable, TernaryGroup


class SpecSyntaxError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class MapSpec:
    name: str
    source: str
    target: str
    images: Dict[str, List[Tuple[Scalar, str]]]


@dataclass
class IdealSpec:
    name: str
    obj: str
    gens: List[Tuple[int, List[Tuple[Scalar, Tuple[str, ...]]]]]


Parsed = Union[NAryAlgebra, GradedAlgebra, NSemigroupTable, TernaryGroup, MapSpec, IdealSpec]

KINDS = ("algebra", "gradedalgebra", "nsemigroup", "ternarygroup", "map", "ideal")


def _tokens(line: str) -> List[str]:
    return line.split("#", 1)[0].split()


def _split_colon(tokens: List[str], lineno: int) -> Tuple[List[str], List[str]]:
    if ":" not in tokens:
        raise SpecSyntaxError(lineno, "expected ':'")
    i = tokens.index(":")
    return tokens[:i], tokens[i + 1:]


def _pairs(rhs: List[str], field_: str, lineno: int) -> List[Tuple[Scalar, str]]:
    if rhs == ["0"] or not rhs:
        return []
    if len(rhs) % 2:
        raise SpecSyntaxError(lineno, "expected <coef> <label> pairs")
    out = []
    for c, lbl in zip(rhs[::2], rhs[1::2]):
        try:
            out.append((parse_scalar(c, field_), lbl))
        except ValueError as exc:
            raise SpecSyntaxError(lineno, str(exc)) from None
    return out


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise SpecSyntaxError(lineno, f"expected an integer, got {tok!r}") from None


class _Stanza:
    def __init__(self, kind: str, header: List[str], lineno: int):
        self.kind, self.header, self.lineno = kind, header, lineno
        self.lines: List[Tuple[int, List[str]]] = []


def parse_spec(text: str) -> Dict[str, Parsed]:
    """Parse all stanzas; returns objects keyed by name in file order."""
    stanzas: List[_Stanza] = []
    current: Optional[_Stanza] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw)
        if not toks:
            continue
        if current is None:
            if toks[0] not in KINDS:
                raise SpecSyntaxError(lineno, f"expected a stanza keyword, got {toks[0]!r}")
            current = _Stanza(toks[0], toks[1:], lineno)
        elif toks == ["end"]:
            stanzas.append(current)
            current = None
        else:
            current.lines.append((lineno, toks))
    if current is not None:
        raise SpecSyntaxError(current.lineno, f"stanza {current.kind} is missing 'end'")
    objects: Dict[str, Parsed] = {}
    for st in stanzas:
        obj = _BUILDERS[st.kind](st, objects)
        name = obj.name
        if name in objects:
            raise SpecSyntaxError(st.lineno, f"duplicate stanza name {name!r}")
        objects[name] = obj
    return objects


def _name(st: _Stanza) -> str:
    if not st.header:
        raise SpecSyntaxError(st.lineno, f"{st.kind} needs a name")
    return st.header[0]


def _fields(st: _Stanza, allowed: Tuple[str, ...]):
    """Split stanza lines into single-valued settings and repeated prod-like lines."""
    single: Dict[str, Tuple[int, List[str]]] = {}
    multi: Dict[str, List[Tuple[int, List[str]]]] = {}
    for lineno, toks in st.lines:
        key = toks[0]
        if key not in allowed:
            raise SpecSyntaxError(lineno, f"unexpected keyword {key!r} in {st.kind}")
        if key in ("prod", "send", "gen", "inverse", "degree"):
            multi.setdefault(key, []).append((lineno, toks[1:]))
        else:
            if key in single:
                raise SpecSyntaxError(lineno, f"repeated {key!r}")
            single[key] = (lineno, toks[1:])
    return single, multi


def _require(single, key: str, st: _Stanza) -> Tuple[int, List[str]]:
    if key not in single:
        raise SpecSyntaxError(st.lineno, f"{st.kind} {_name(st)} is missing '{key}'")
    return single[key]


def _field(single) -> str:
    if "field" not in single:
        return "Q"
    lineno, toks = single["field"]
    if toks not in (["Q"], ["Qw"]):
        raise SpecSyntaxError(lineno, "field must be Q or Qw")
    return toks[0]


def _lookup(labels: List[str], lbl: str, lineno: int) -> int:
    try:
        return labels.index(lbl)
    except ValueError:
        raise SpecSyntaxError(lineno, f"unknown label {lbl!r}") from None


def _build_algebra(st: _Stanza, objects) -> NAryAlgebra:
    name = _name(st)
    single, multi = _fields(st, ("field", "n", "dim", "basis", "generators", "prod"))
    fld = _field(single)
    lineno, toks = _require(single, "n", st)
    n = _int(toks[0], lineno) if toks else 0
    blineno, labels = _require(single, "basis", st)
    if "dim" in single:
        dlineno, dt = single["dim"]
        if _int(dt[0], dlineno) != len(labels):
            raise SpecSyntaxError(dlineno, f"dim {dt[0]} disagrees with {len(labels)} basis labels")
    if len(set(labels)) != len(labels):
        raise SpecSyntaxError(blineno, "duplicate basis labels")
    gens = None
    if "generators" in single:
        glineno, gt = single["generators"]
        gens = [_lookup(labels, g, glineno) for g in gt]
    table = {}
    for lineno, toks in multi.get("prod", []):
        lhs, rhs = _split_colon(toks, lineno)
        if len(lhs) != n:
            raise SpecSyntaxError(lineno, f"prod needs {n} labels")
        key = tuple(_lookup(labels, x, lineno) for x in lhs)
        if key in table:
            raise SpecSyntaxError(lineno, "repeated prod entry")
        vec: Dict[int, Scalar] = {}
        for c, lbl in _pairs(rhs, fld, lineno):
            k = _lookup(labels, lbl, lineno)
            vec[k] = vec.get(k, 0) + c
        table[key] = vec
    try:
        return NAryAlgebra(name, n, labels, table, fld, gens)
    except ValueError as exc:
        raise SpecSyntaxError(st.lineno, str(exc)) from None


def _build_graded(st: _Stanza, objects) -> GradedAlgebra:
    name = _name(st)
    single, multi = _fields(st, ("field", "modulus", "degree", "prod"))
    fld = _field(single)
    lineno, toks = _require(single, "modulus", st)
    modulus = _int(toks[0], lineno)
    labels: Dict[int, List[str]] = {}
    for lineno, toks in multi.get("degree", []):
        d = _int(toks[0], lineno)
        if not 1 <= d <= modulus or d in labels:
            raise SpecSyntaxError(lineno, f"bad or repeated degree {d}")
        labels[d] = toks[1:]
    everything = [l for ls in labels.values() for l in ls]
    if len(set(everything)) != len(everything):
        raise SpecSyntaxError(st.lineno, "duplicate labels across degrees")
    where = {l: (d, i) for d, ls in labels.items() for i, l in enumerate(ls)}

    def locate(lbl, lineno):
        if lbl not in where:
            raise SpecSyntaxError(lineno, f"unknown label {lbl!r}")
        return where[lbl]

    table = {}
    for lineno, toks in multi.get("prod", []):
        lhs, rhs = _split_colon(toks, lineno)
        if len(lhs) != 2:
            raise SpecSyntaxError(lineno, "graded prod takes two labels")
        (d, i), (e, j) = locate(lhs[0], lineno), locate(lhs[1], lineno)
        target = ((d + e - 1) % modulus) + 1
        vec = {}
        for c, lbl in _pairs(rhs, fld, lineno):
            t, k = locate(lbl, lineno)
            if t != target:
                raise SpecSyntaxError(lineno, f"{lbl} has degree {t}, product lands in degree {target}")
            vec[k] = vec.get(k, 0) + c
        table[(d, i, e, j)] = vec
    try:
        return GradedAlgebra(name, modulus, labels, table, fld)
    except ValueError as exc:
        raise SpecSyntaxError(st.lineno, str(exc)) from None


def _semigroup_table(st, single, multi, n):
    lineno, elements = _require(single, "elements", st)
    if len(set(elements)) != len(elements):
        raise SpecSyntaxError(lineno, "duplicate element names")
    table = {}
    for lineno, toks in multi.get("prod", []):
        lhs, rhs = _split_colon(toks, lineno)
        if len(lhs) != n or len(rhs) != 1:
            raise SpecSyntaxError(lineno, f"prod needs {n} elements and one result")
        key = tuple(_lookup(elements, x, lineno) for x in lhs)
        if key in table:
            raise SpecSyntaxError(lineno, "repeated prod entry")
        table[key] = _lookup(elements, rhs[0], lineno)
    for key in itertools.product(range(len(elements)), repeat=n):
        if key not in table:
            raise SpecSyntaxError(st.lineno, "missing table entry prod " + " ".join(elements[i] for i in key))
    return elements, table


def _build_nsemigroup(st, objects) -> NSemigroupTable:
    single, multi = _fields(st, ("n", "elements", "prod"))
    lineno, toks = _require(single, "n", st)
    n = _int(toks[0], lineno)
    elements, table = _semigroup_table(st, single, multi, n)
    return NSemigroupTable(_name(st), n, elements, table)


def _build_ternary(st, objects) -> TernaryGroup:
    single, multi = _fields(st, ("n", "elements", "prod", "inverse"))
    if "n" in single and single["n"][1] != ["3"]:
        raise SpecSyntaxError(single["n"][0], "ternary groups have n = 3")
    elements, table = _semigroup_table(st, single, multi, 3)
    inverse: Dict[int, int] = {}
    for lineno, toks in multi.get("inverse", []):
        lhs, rhs = _split_colon(toks, lineno)
        if len(lhs) != 1 or len(rhs) != 1:
            raise SpecSyntaxError(lineno, "inverse <lbl> : <lbl>")
        inverse[_lookup(elements, lhs[0], lineno)] = _lookup(elements, rhs[0], lineno)
    missing = [elements[i] for i in range(len(elements)) if i not in inverse]
    if missing:
        raise SpecSyntaxError(st.lineno, f"missing inverse for {missing[0]}")
    return TernaryGroup(_name(st), elements, table, [inverse[i] for i in range(len(elements))])


def _object_labels(obj, lineno: int, degree_one: bool = False) -> Tuple[List[str], str]:
    if isinstance(obj, NAryAlgebra):
        return obj.labels, obj.field
    if isinstance(obj, GradedAlgebra):
        return obj.labels[1], obj.field
    raise SpecSyntaxError(lineno, f"{obj.name} is not a linear object")


def _build_map(st, objects) -> MapSpec:
    h = st.header
    if len(h) != 5 or h[1] != "from" or h[3] != "to":
        raise SpecSyntaxError(st.lineno, "map <name> from <obj> to <obj>")
    name, src, tgt = h[0], h[2], h[4]
    for o in (src, tgt):
        if o not in objects:
            raise SpecSyntaxError(st.lineno, f"unknown object {o!r}")
    slabels, _ = _object_labels(objects[src], st.lineno)
    tlabels, tfield = _object_labels(objects[tgt], st.lineno)
    _, multi = _fields(st, ("send",))
    images: Dict[str, List[Tuple[Scalar, str]]] = {}
    for lineno, toks in multi.get("send", []):
        lhs, rhs = _split_colon(toks, lineno)
        if len(lhs) != 1:
            raise SpecSyntaxError(lineno, "send <lbl> : ...")
        _lookup(slabels, lhs[0], lineno)
        if lhs[0] in images:
            raise SpecSyntaxError(lineno, f"repeated send for {lhs[0]}")
        pairs = _pairs(rhs, tfield, lineno)
        for _, lbl in pairs:
            _lookup(tlabels, lbl, lineno)
        images[lhs[0]] = pairs
    return MapSpec(name, src, tgt, images)


def _build_ideal(st, objects) -> IdealSpec:
    h = st.header
    if len(h) != 3 or h[1] != "in":
        raise SpecSyntaxError(st.lineno, "ideal <name> in <obj>")
    name, obj = h[0], h[2]
    if obj not in objects or not isinstance(objects[obj], NAryAlgebra):
        raise SpecSyntaxError(st.lineno, f"unknown algebra {obj!r}")
    A = objects[obj]
    _, multi = _fields(st, ("gen",))
    gens = []
    for lineno, toks in multi.get("gen", []):
        lhs, rhs = _split_colon(toks, lineno)
        if len(lhs) != 1:
            raise SpecSyntaxError(lineno, "gen <degree> : ...")
        d = _int(lhs[0], lineno)
        modulus = max(1, A.n - 1)
        if not 1 <= d <= modulus:
            raise SpecSyntaxError(lineno, f"degree {d} outside 1..{modulus}")
        terms = []
        for c, word in _pairs(rhs, A.field, lineno):
            letters = tuple(word.split("*"))
            for l in letters:
                _lookup(A.labels, l, lineno)
            if word_degree(len(letters), modulus) != d:
                raise SpecSyntaxError(lineno, f"word {word} is not of degree {d}")
            terms.append((c, letters))
        gens.append((d, terms))
    return IdealSpec(name, obj, gens)


_BUILDERS = {
    "algebra": _build_algebra,
    "gradedalgebra": _build_graded,
    "nsemigroup": _build_nsemigroup,
    "ternarygroup": _build_ternary,
    "map": _build_map,
    "ideal": _build_ideal,
}


# ---------------------------------------------------------------------------
# serialization


def _terms(vec: Dict[int, Scalar], labels: List[str]) -> str:
    parts = [f"{format_scalar(c)} {labels[k]}" for k, c in sorted(vec.items()) if c]
    return " ".join(parts) if parts else "0"


def serialize(obj: Parsed) -> str:
    lines: List[str] = []
    if isinstance(obj, NAryAlgebra):
        lines += [f"algebra {obj.name}", f"field {obj.field}", f"n {obj.n}", f"dim {obj.dim}",
                  "basis " + " ".join(obj.labels)]
        if obj.generators != list(range(obj.dim)):
            lines.append("generators " + " ".join(obj.labels[i] for i in obj.generators))
        for key in sorted(obj.table):
            lines.append("prod " + " ".join(obj.labels[i] for i in key) + " : " + _terms(obj.table[key], obj.labels))
    elif isinstance(obj, GradedAlgebra):
        lines += [f"gradedalgebra {obj.name}", f"field {obj.field}", f"modulus {obj.modulus}"]
        for d in obj.degrees():
            lines.append(f"degree {d} " + " ".join(obj.labels[d]))
        for (d, i, e, j) in sorted(obj.table):
            t = obj.degmul(d, e)
            lines.append(f"prod {obj.labels[d][i]} {obj.labels[e][j]} : " + _terms(obj.table[(d, i, e, j)], obj.labels[t]))
    elif isinstance(obj, TernaryGroup):
        lines += [f"ternarygroup {obj.name}", "elements " + " ".join(obj.elements)]
        for key in sorted(obj.table):
            lines.append("prod " + " ".join(obj.elements[i] for i in key) + " : " + obj.elements[obj.table[key]])
        for i, j in enumerate(obj.inverse):
            lines.append(f"inverse {obj.elements[i]} : {obj.elements[j]}")
    elif isinstance(obj, NSemigroupTable):
        lines += [f"nsemigroup {obj.name}", f"n {obj.n}", "elements " + " ".join(obj.elements)]
        for key in sorted(obj.table):
            lines.append("prod " + " ".join(obj.elements[i] for i in key) + " : " + obj.elements[obj.table[key]])
    elif isinstance(obj, MapSpec):
        lines.append(f"map {obj.name} from {obj.source} to {obj.target}")
        for lbl, pairs in obj.images.items():
            rhs = " ".join(f"{format_scalar(c)} {l}" for c, l in pairs) or "0"
            lines.append(f"send {lbl} : {rhs}")
    elif isinstance(obj, IdealSpec):
        lines.append(f"ideal {obj.name} in {obj.obj}")
        for d, terms in obj.gens:
            rhs = " ".join(f"{format_scalar(c)} {'*'.join(w)}" for c, w in terms) or "0"
            lines.append(f"gen {d} : {rhs}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize_spec(objects: Dict[str, Parsed]) -> str:
    return "\n".join(serialize(o) for o in objects.values())


# ---------------------------------------------------------------------------
# resolving references


def map_images(spec: MapSpec, objects: Dict[str, Parsed]) -> List[Dict[int, Scalar]]:
    src, tgt = objects[spec.source], objects[spec.target]
    slabels, _ = _object_labels(src, 0)
    tlabels, tfield = _object_labels(tgt, 0)
    out = []
    for lbl in slabels:
        vec: Dict[int, Scalar] = {}
        for c, t in spec.images.get(lbl, []):
            k = tlabels.index(t)
            vec[k] = vec.get(k, 0) + to_field(c, tfield)
        out.append({k: c for k, c in vec.items() if c})
    return out


def ideal_word_vectors(spec: IdealSpec, A: NAryAlgebra) -> List[Tuple[int, Dict[Tuple[int, ...], Scalar]]]:
    out = []
    for d, terms in spec.gens:
        wv: Dict[Tuple[int, ...], Scalar] = {}
        for c, letters in terms:
            w = tuple(A.index(l) for l in letters)
            wv[w] = wv.get(w, 0) + c
        out.append((d, {w: c for w, c in wv.items() if c}))
    return out


def parse_element(expr: str, A: NAryAlgebra) -> Dict[Tuple[int, ...], Scalar]:
    """``<coef> <word> [<coef> <word>]...`` with words like ``e1*e2``."""
    toks = expr.split()
    if len(toks) % 2:
        raise ValueError("element must be <coef> <word> pairs")
    wv: Dict[Tuple[int, ...], Scalar] = {}
    for c, word in zip(toks[::2], toks[1::2]):
        try:
            w = tuple(A.index(l) for l in word.split("*"))
        except KeyError as exc:
            raise ValueError(exc.args[0]) from None
        wv[w] = wv.get(w, 0) + parse_scalar(c, A.field)
    return {w: c for w, c in wv.items() if c}
