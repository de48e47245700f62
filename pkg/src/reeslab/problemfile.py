"""Line-oriented problem files: field, variables with bidegrees, order, ideal, family flags."""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from .groebner import Ideal
from .rings import (
    DEGLEX,
    DEGREVLEX,
    LEX,
    PrimeField,
    QQ,
    ParseError,
    RingSpec,
    parse_polynomial,
)

_ORDERS = {"degrevlex": DEGREVLEX, "lex": LEX, "deglex": DEGLEX}
_VAR = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_FLAG_CALL = re.compile(r"^([a-zA-Z_][a-zA-Z_0-9]*)\(([^)]*)\)$")


class ProblemError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class ProblemFile:
    """One ring and ideal per file, plus optional family flags."""

    ring: RingSpec
    ideal: Ideal
    family: tuple          # ((name, value), ...) — value is True, tuple or int
    content_hash: str

    def family_dict(self):
        return dict(self.family)


def parse_problem(text):
    field = None
    var_names, var_degrees = [], []
    order = None
    ideal_exprs = []
    family = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ProblemError("expected 'key: value'", lineno)
        key, _, value = line.partition(":")
        key = key.strip().lower()
        value = value.strip()
        if key in seen and key != "ideal":
            raise ProblemError("duplicate %r line" % key, lineno)
        seen.add(key)
        if key == "field":
            if value == "Q":
                field = QQ
            elif value.startswith("Fp"):
                try:
                    field = PrimeField(int(value.split(":", 1)[1]))
                except (IndexError, ValueError) as exc:
                    raise ProblemError("malformed prime field %r" % value, lineno) from exc
            else:
                raise ProblemError("unknown field %r" % value, lineno)
        elif key == "vars":
            matches = list(_VAR.finditer(value))
            rest = _VAR.sub("", value).replace(",", "").strip()
            if not matches or rest:
                raise ProblemError("malformed variable list %r" % value, lineno)
            for m in matches:
                var_names.append(m.group(1))
                var_degrees.append((int(m.group(2)), int(m.group(3))))
        elif key == "order":
            if value not in _ORDERS:
                raise ProblemError("unknown order %r" % value, lineno)
            order = _ORDERS[value]
        elif key == "ideal":
            ideal_exprs.extend([(lineno, e.strip()) for e in value.split(";") if e.strip()])
        elif key == "family":
            for token in value.replace(",", " ").split():
                if "=" in token:
                    name, _, v = token.partition("=")
                    family.append((name, int(v)))
                else:
                    m = _FLAG_CALL.match(token)
                    if m:
                        args = tuple(int(x) for x in m.group(2).split(",") if x.strip())
                        family.append((m.group(1), args))
                    else:
                        family.append((token, True))
        else:
            raise ProblemError("unknown key %r" % key, lineno)
    if field is None:
        field = QQ
    if not var_names:
        raise ProblemError("no variables declared")
    ring = RingSpec(field, tuple(var_names), tuple(var_degrees), order or DEGREVLEX)
    gens = []
    for lineno, expr in ideal_exprs:
        try:
            gens.append(parse_polynomial(expr, ring))
        except ParseError as exc:
            raise ProblemError("bad generator %r: %s" % (expr, exc), lineno) from exc
    ideal = Ideal(ring, gens)
    canonical = _canonical_text(ring, ideal_exprs, family)
    digest = hashlib.sha256(canonical.encode()).hexdigest()
    return ProblemFile(ring, ideal, tuple(family), digest)


def _canonical_text(ring, ideal_exprs, family):
    lines = [
        "field=%r" % (ring.field,),
        "vars=%s" % ",".join("%s(%d,%d)" % (n, d[0], d[1]) for n, d in zip(ring.names, ring.degrees)),
        "order=%s:%d" % (ring.order.tag, ring.order.block),
        "ideal=%s" % ";".join(e for _, e in ideal_exprs),
        "family=%r" % (sorted(family),),
    ]
    return "\n".join(lines)


def load_problem(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())
