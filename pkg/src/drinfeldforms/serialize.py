"""Parsing and output formats.

The JSON schema for field data: an F_q element is one integer, its base-p
digit packing in the fixed polynomial basis; a polynomial in t is the
ascending list of such integers; a rational function is {"num": [...],
"den": [...]}.  Matrices are nested row-major arrays.  CLI polynomial
syntax is ASCII like ``t^2+t+1`` with integer coefficients reduced into
F_q.
"""

import json
import re

from .errors import UsageError
from .fq import FqElem
from .rings import Poly, RatFunc

_TERM_RE = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?(t)?\s*(?:\^\s*(\d+))?\s*$")


def parse_poly(fq, text):
    """Parse ``t^2+t+1``-style input into an element of F_q[t]."""
    s = text.strip().replace("-", "+-")
    if not s or s == "+-":
        raise UsageError(f"empty polynomial: {text!r}")
    coeffs = {}
    for chunk in s.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        negate = chunk.startswith("-")
        if negate:
            chunk = chunk[1:]
        m = _TERM_RE.match(chunk)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise UsageError(f"cannot parse polynomial term {chunk!r} in {text!r}")
        coef = int(m.group(1)) if m.group(1) is not None else 1
        if m.group(2) is None:
            exp = 0
            if m.group(3) is not None:
                raise UsageError(f"exponent without variable in {chunk!r}")
        else:
            exp = int(m.group(3)) if m.group(3) is not None else 1
        code = fq.from_int(-coef if negate else coef)
        coeffs[exp] = fq.add(coeffs.get(exp, 0), code)
    if not coeffs:
        return Poly.zero(fq)
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return Poly(fq, out)


def poly_to_json(p):
    return list(p.coeffs)


def poly_from_json(fq, data):
    return Poly(fq, [int(c) for c in data])


def ratfunc_to_json(x):
    return {"num": list(x.num.coeffs), "den": list(x.den.coeffs)}


def entry_str(x):
    if isinstance(x, FqElem):
        return str(x.code)
    return str(x)


def matrix_to_csv(matrix):
    lines = [",".join(f'"{entry_str(x)}"' for x in row) for row in matrix.rows]
    return "\n".join(lines) + "\n"


def matrix_to_latex(matrix):
    def tex(x):
        if isinstance(x, RatFunc) and not x.den.is_one():
            return rf"\frac{{{_poly_tex(x.num)}}}{{{_poly_tex(x.den)}}}"
        if isinstance(x, RatFunc):
            return _poly_tex(x.num)
        return entry_str(x)

    body = " \\\\\n".join(" & ".join(tex(x) for x in row) for row in matrix.rows)
    return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}\n"


def _poly_tex(p):
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            tp = "t" if i == 1 else f"t^{{{i}}}"
            parts.append(tp if c == 1 else f"{c} {tp}")
    return " + ".join(parts)


def canonical_json_dumps(data):
    """Deterministic, byte-stable JSON rendering."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"
