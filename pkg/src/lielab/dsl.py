"""Script parsing, execution, and report serialization.

The script language is line oriented: one statement per line (brackets
may spill over newlines), `#` comments to end of line, and every object
carries a declared name so report witnesses stay self-describing.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import __version__
from .algebra import (
    abelian,
    attach_involution,
    direct_sum,
    make_extension,
    matrix_algebra,
    minus,
    opposite,
    quotient_algebra,
    strictly_upper,
    table_algebra,
    upper_triangular,
)
from .derivations import der_algebra, restriction_ideal, sder
from .errors import LielabError, ParseError, Redeclaration, UndeclaredName
from .exactlin import Field, Subspace
from .outcome import TheoremInstance, Verdict
from .structure import DEFAULT_BUDGET, annihilator, degree, property_check, qann
from .theorems import THEOREM_NAMES, verify

__all__ = ["Script", "Statement", "parse_script", "execute", "format_script", "report_json"]

_CHECK_KINDS = (
    "semiprime",
    "prime",
    "snd",
    "essential",
    "weakq",
    "qann",
    "center",
    "iz",
    "ikz",
    "deg",
    "thm",
)

_EXPR_HEADS = ("matrix", "ut", "sut", "abelian", "minus", "dsum", "op", "quotient", "der", "sder", "table")


# ---------------------------------------------------------------------------
# tokens


@dataclass(frozen=True)
class Token:
    kind: str  # 'name' | 'int' | 'rat' | 'punct' | 'nl'
    value: object
    line: int
    col: int


_PUNCT = set("{}[];*+=")


def _tokenize(text: str):
    toks = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            toks.append(Token("nl", None, line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                toks.append(Token("rat", Fraction(int(text[i:j]), int(text[j + 1 : k])), line, start_col))
                col += k - i
                i = k
                continue
            toks.append(Token("int", int(text[i:j]), line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("name", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            toks.append(Token("punct", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise ParseError(line, col, "a statement token", ch)
    toks.append(Token("nl", None, line, col))
    return toks


def _split_statements(tokens):
    groups = []
    current = []
    depth = 0
    for tok in tokens:
        if tok.kind == "nl":
            if depth == 0:
                if current:
                    groups.append(current)
                    current = []
                continue
            continue
        if tok.kind == "punct" and tok.value in "[{":
            depth += 1
        elif tok.kind == "punct" and tok.value in "]}":
            depth = max(0, depth - 1)
        current.append(tok)
    if current:
        groups.append(current)
    return groups


class _Cursor:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    @property
    def done(self):
        return self.pos >= len(self.toks)

    def _where(self):
        if self.done:
            last = self.toks[-1]
            return last.line, last.col + 1
        tok = self.toks[self.pos]
        return tok.line, tok.col

    def peek(self):
        return None if self.done else self.toks[self.pos]

    def take(self, kind=None, value=None, expected=None):
        line, col = self._where()
        what = expected or (repr(value) if value is not None else kind or "a token")
        if self.done:
            raise ParseError(line, col, what, "end of statement")
        tok = self.toks[self.pos]
        if kind is not None and tok.kind != kind:
            raise ParseError(line, col, what, str(tok.value))
        if value is not None and tok.value != value:
            raise ParseError(line, col, what, str(tok.value))
        self.pos += 1
        return tok

    def take_name(self, expected="a name"):
        return self.take("name", expected=expected)

    def take_int(self, expected="an integer"):
        tok = self.take("int", expected=expected)
        return int(tok.value)

    def take_scalar(self):
        tok = self.peek()
        line, col = self._where()
        if tok is None or tok.kind not in ("int", "rat"):
            raise ParseError(line, col, "a scalar", str(tok.value) if tok else "end of statement")
        self.pos += 1
        return tok.value

    def end(self):
        if not self.done:
            tok = self.toks[self.pos]
            raise ParseError(tok.line, tok.col, "end of statement", str(tok.value))


# ---------------------------------------------------------------------------
# statements


@dataclass(frozen=True)
class Statement:
    kind: str  # 'field' | 'algebra' | 'involution' | 'extension' | 'check'
    data: tuple  # nested tuples of plain scalars and strings
    line: int = dc_field(compare=False, default=0)


@dataclass(frozen=True)
class Script:
    statements: tuple
    source_hash: str


def _parse_vector_list(cur: _Cursor):
    cur.take("punct", "[", expected="'['")
    rows = []
    row = []
    while True:
        tok = cur.peek()
        if tok is None:
            line, col = cur._where()
            raise ParseError(line, col, "']'", "end of statement")
        if tok.kind == "punct" and tok.value == "]":
            cur.pos += 1
            break
        if tok.kind == "punct" and tok.value == ";":
            cur.pos += 1
            rows.append(tuple(row))
            row = []
            continue
        row.append(cur.take_scalar())
    if row:
        rows.append(tuple(row))
    if not rows:
        line, col = cur._where()
        raise ParseError(line, col, "at least one vector", "]")
    return tuple(rows)


def _parse_basis_ref(cur: _Cursor):
    """One 'e<k>' reference, written either fused or as two tokens."""
    tok = cur.take("name", expected="a basis reference e<k>")
    if tok.value == "e":
        return cur.take_int("a basis index")
    if tok.value.startswith("e") and tok.value[1:].isdigit():
        return int(tok.value[1:])
    raise ParseError(tok.line, tok.col, "a basis reference e<k>", str(tok.value))


def _parse_lincomb(cur: _Cursor):
    tok = cur.peek()
    if tok is not None and tok.kind == "int" and tok.value == 0:
        nxt = cur.toks[cur.pos + 1] if cur.pos + 1 < len(cur.toks) else None
        if nxt is None or (nxt.kind == "punct" and nxt.value == ";"):
            cur.pos += 1
            return ()
    terms = []
    while True:
        scalar = cur.take_scalar()
        index = _parse_basis_ref(cur)
        terms.append((scalar, index))
        tok = cur.peek()
        if tok is not None and tok.kind == "punct" and tok.value == "+":
            cur.pos += 1
            continue
        break
    return tuple(terms)


def _parse_table(cur: _Cursor):
    cur.take("name", "dim", expected="'dim'")
    dim = cur.take_int()
    cur.take("punct", "{", expected="'{'")
    prods = []
    while True:
        tok = cur.peek()
        if tok is None:
            line, col = cur._where()
            raise ParseError(line, col, "'}'", "end of statement")
        if tok.kind == "punct" and tok.value == "}":
            cur.pos += 1
            break
        i = _parse_basis_ref(cur)
        cur.take("punct", "*", expected="'*'")
        j = _parse_basis_ref(cur)
        cur.take("punct", "=", expected="'='")
        comb = _parse_lincomb(cur)
        cur.take("punct", ";", expected="';'")
        prods.append((i, j, comb))
    return ("table", dim, tuple(prods))


def _parse_expr(cur: _Cursor):
    tok = cur.take_name("an algebra expression")
    head = tok.value
    if head not in _EXPR_HEADS:
        raise ParseError(tok.line, tok.col, " | ".join(_EXPR_HEADS), head)
    if head in ("matrix", "ut", "sut", "abelian"):
        return (head, cur.take_int())
    if head in ("minus", "op", "der", "sder"):
        return (head, cur.take_name().value)
    if head == "dsum":
        return (head, cur.take_name().value, cur.take_name().value)
    if head == "quotient":
        return (head, cur.take_name().value, cur.take_name().value)
    return _parse_table(cur)


def _expr_name_refs(expr):
    head = expr[0]
    if head in ("minus", "op", "der", "sder"):
        return [expr[1]]
    if head in ("dsum", "quotient"):
        return [expr[1], expr[2]]
    return []


_THM_ON_EXTENSION = ("qadann", "coruno", "cordos")


def _parse_check(cur: _Cursor):
    tok = cur.take_name("a check kind")
    kind = tok.value
    if kind not in _CHECK_KINDS:
        raise ParseError(tok.line, tok.col, " | ".join(_CHECK_KINDS), kind)
    args = []
    if kind == "thm":
        thm = cur.take_name("a statement name").value
        if thm not in THEOREM_NAMES:
            line, col = cur._where()
            raise ParseError(line, col, " | ".join(THEOREM_NAMES), thm)
        args.append(thm)
        args.append(cur.take_name().value)
    elif kind == "qann":
        args.append(cur.take_name().value)
        args.append(cur.take_name().value)
        tok = cur.peek()
        if tok is not None and tok.kind == "name" and tok.value == "enumerate":
            cur.pos += 1
            args.append("enumerate")
    else:
        args.append(cur.take_name().value)
    budget = None
    tok = cur.peek()
    if tok is not None and tok.kind == "name" and tok.value == "budget":
        cur.pos += 1
        budget = cur.take_int("a budget value")
    cur.end()
    return ("check", (kind, tuple(args), budget))


def parse_script(text: str) -> Script:
    """Parse and statically validate a script.

    Names must be declared before use and never redeclared; field
    construction runs during parsing, so characteristic 2 or 3 raises
    immediately.
    """
    tokens = _tokenize(text)
    names = {}  # name -> ('field', Field) | ('algebra', field name) | ('extension', field name)
    statements = []

    def declared(cur, name_tok, want):
        name = name_tok.value
        if name not in names:
            raise UndeclaredName(name, name_tok.line)
        got = names[name][0]
        if got != want:
            raise ParseError(name_tok.line, name_tok.col, f"a declared {want}", f"{name} (a {got})")
        return names[name]

    def fresh(name_tok):
        if name_tok.value in names:
            raise Redeclaration(name_tok.value, name_tok.line)
        return name_tok.value

    for group in _split_statements(tokens):
        cur = _Cursor(group)
        head = cur.take_name("field | algebra | involution | extension | check")
        if head.value == "field":
            name = fresh(cur.take_name())
            kind_tok = cur.take_name("'Q' or 'Fp'")
            if kind_tok.value == "Q":
                fld = Field.rationals()
                spec = ("Q",)
            elif kind_tok.value == "Fp":
                p = cur.take_int("a prime")
                fld = Field.prime(p)
                spec = ("Fp", p)
            else:
                raise ParseError(kind_tok.line, kind_tok.col, "'Q' or 'Fp'", kind_tok.value)
            cur.end()
            names[name] = ("field", fld)
            statements.append(Statement("field", (name,) + spec, head.line))
        elif head.value == "algebra":
            name_tok = cur.take_name()
            cur.take("name", "over", expected="'over'")
            ftok = cur.take_name()
            declared(cur, ftok, "field")
            cur.take("punct", "=", expected="'='")
            expr = _parse_expr(cur)
            cur.end()
            for ref in _expr_name_refs(expr):
                info = names.get(ref)
                if info is None:
                    raise UndeclaredName(ref, head.line)
                want = "extension" if expr[0] == "quotient" and ref == expr[2] else "algebra"
                if info[0] != want:
                    raise ParseError(head.line, 1, f"a declared {want}", f"{ref} (a {info[0]})")
                if info[0] == "algebra" and info[1] != ftok.value:
                    raise ParseError(head.line, 1, f"an operand over field {ftok.value}", ref)
            name = fresh(name_tok)
            names[name] = ("algebra", ftok.value)
            statements.append(Statement("algebra", (name, ftok.value, expr), head.line))
        elif head.value == "involution":
            cur.take("name", "on", expected="'on'")
            atok = cur.take_name()
            declared(cur, atok, "algebra")
            cur.take("punct", "=", expected="'='")
            spec_tok = cur.take_name("transpose | exchange | matrix")
            if spec_tok.value in ("transpose", "exchange"):
                spec = (spec_tok.value,)
            elif spec_tok.value == "matrix":
                spec = ("matrix", _parse_vector_list(cur))
            else:
                raise ParseError(spec_tok.line, spec_tok.col, "transpose | exchange | matrix", spec_tok.value)
            cur.end()
            statements.append(Statement("involution", (atok.value, spec), head.line))
        elif head.value == "extension":
            name_tok = cur.take_name()
            cur.take("punct", "=", expected="'='")
            qtok = cur.take_name()
            qinfo = declared(cur, qtok, "algebra")
            cur.take("name", "contains", expected="'contains'")
            cur.take("name", "span", expected="'span'")
            vectors = _parse_vector_list(cur)
            cur.end()
            name = fresh(name_tok)
            names[name] = ("extension", qinfo[1], qtok.value)
            statements.append(Statement("extension", (name, qtok.value, vectors), head.line))
        elif head.value == "check":
            _, payload = _parse_check(cur)
            kind, args, budget = payload
            if kind == "thm":
                refs = [args[1]]
            elif kind == "qann":
                refs = [a for a in args if a != "enumerate"]
            else:
                refs = list(args)
            for ref in refs:
                if ref not in names:
                    raise UndeclaredName(ref, head.line)
                if names[ref][0] == "field":
                    raise ParseError(head.line, 1, "an algebra or extension", f"{ref} (a field)")
            statements.append(Statement("check", payload, head.line))
        else:
            raise ParseError(head.line, head.col, "field | algebra | involution | extension | check", head.value)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return Script(tuple(statements), digest)


# ---------------------------------------------------------------------------
# canonical formatting


def _format_scalar(s):
    return str(s)


def _format_vectors(rows):
    return "[" + "; ".join(" ".join(_format_scalar(s) for s in row) for row in rows) + "]"


def _format_expr(expr):
    head = expr[0]
    if head == "table":
        prods = []
        for i, j, comb in expr[2]:
            if not comb:
                rhs = "0"
            else:
                rhs = " + ".join(f"{_format_scalar(c)} e{k}" for c, k in comb)
            prods.append(f"e{i} * e{j} = {rhs};")
        inner = " ".join(prods)
        body = f" {inner} " if prods else " "
        return f"table dim {expr[1]} {{{body}}}"
    return " ".join(str(part) for part in expr)


def format_statement(stmt: Statement) -> str:
    if stmt.kind == "field":
        if stmt.data[1] == "Q":
            return f"field {stmt.data[0]} Q"
        return f"field {stmt.data[0]} Fp {stmt.data[2]}"
    if stmt.kind == "algebra":
        name, fname, expr = stmt.data
        return f"algebra {name} over {fname} = {_format_expr(expr)}"
    if stmt.kind == "involution":
        name, spec = stmt.data
        if spec[0] == "matrix":
            return f"involution on {name} = matrix {_format_vectors(spec[1])}"
        return f"involution on {name} = {spec[0]}"
    if stmt.kind == "extension":
        name, qname, vectors = stmt.data
        return f"extension {name} = {qname} contains span {_format_vectors(vectors)}"
    kind, args, budget = stmt.data
    text = "check " + kind + ("" if not args else " " + " ".join(str(a) for a in args))
    if budget is not None:
        text += f" budget {budget}"
    return text


def format_script(script: Script) -> str:
    """Canonical pretty-print; parsing it back gives an equal Script."""
    return "\n".join(format_statement(s) for s in script.statements) + "\n"


# ---------------------------------------------------------------------------
# execution


_MAX_LISTED_ELEMENTS = 4096


def _json_value(value):
    """Exact JSON form: F_p scalars as ints, rationals as 'n/d' strings."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_json_value(x) for x in value]
    if isinstance(value, Subspace):
        return {"dim": value.dim, "basis": _json_value(value.basis)}
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(x) for x in value]
    return str(value)


def _serialize_verdict(v: Verdict):
    return {"status": v.status, "witness": _json_value(v.witness), "note": v.note}


def _serialize_instance(inst: TheoremInstance):
    return {
        "name": inst.name,
        "outcome": inst.outcome,
        "verdict": _serialize_verdict(inst.verdict) if inst.verdict else None,
        "checks": [
            {"label": label, **_serialize_verdict(v)} for label, v in inst.checks
        ],
        "note": inst.note,
    }


def _coerce_rows(fld: Field, rows, width: int, what: str):
    out = fld.zeros(len(rows), width)
    for r, row in enumerate(rows):
        if len(row) != width:
            raise LielabError(f"{what}: expected vectors of length {width}, got {len(row)}")
        for c, s in enumerate(row):
            out[r, c] = fld.coerce(s)
    return out


def _eval_expr(fld: Field, expr, env):
    head = expr[0]
    if head == "matrix":
        return matrix_algebra(fld, expr[1])
    if head == "ut":
        return upper_triangular(fld, expr[1])
    if head == "sut":
        return strictly_upper(fld, expr[1])
    if head == "abelian":
        return abelian(fld, expr[1])
    if head == "minus":
        return minus(env[expr[1]])
    if head == "op":
        return opposite(env[expr[1]])
    if head == "dsum":
        return direct_sum(env[expr[1]], env[expr[2]])
    if head == "quotient":
        return quotient_algebra(env[expr[1]], env[expr[2]].sub)
    if head == "der":
        return der_algebra(env[expr[1]]).lie
    if head == "sder":
        return sder(env[expr[1]]).lie
    # table: detect the bracket flavor from the entries themselves
    dim, prods = expr[1], expr[2]
    table = fld.zeros(dim, dim, dim)
    for i, j, comb in prods:
        for c, k in comb:
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
                raise LielabError(f"table: basis index out of range in e{i} * e{j}")
            table[i - 1, j - 1, k - 1] = fld.coerce(c)
    antisym = np.array_equal(fld.reduce(table + table.transpose(1, 0, 2)), fld.zeros(dim, dim, dim))
    diag_zero = all(not table[i, i].any() for i in range(dim))
    kind = "lie" if (antisym and diag_zero and table.any()) else "associative"
    return table_algebra(fld, dim, table, kind)


def _as_algebra(env, name):
    obj = env[name]
    from .algebra import Algebra

    if not isinstance(obj, Algebra):
        raise LielabError(f"{name} is not an algebra")
    return obj


def _as_extension(env, name):
    from .algebra import Extension

    obj = env[name]
    if not isinstance(obj, Extension):
        raise LielabError(f"{name} is not an extension")
    return obj


def _run_check(kind, args, env, budget):
    """Return (verdict string or None, witness payload, hypothesis failures)."""
    if kind in ("semiprime", "prime", "snd"):
        v = property_check(kind, _as_algebra(env, args[0]), budget=budget)
        return v.status, _json_value(v.witness), []
    if kind == "essential":
        ext = _as_extension(env, args[0])
        v = property_check("essential", ext.ambient, ext.sub, budget=budget)
        return v.status, _json_value(v.witness), []
    if kind == "weakq":
        v = property_check("weak_quotient", _as_extension(env, args[0]))
        return v.status, _json_value(v.witness), []
    if kind == "qann":
        alg = _as_algebra(env, args[0])
        from .algebra import Extension

        target_obj = env[args[1]]
        full = Subspace.full(alg.field, alg.dim)
        if isinstance(target_obj, Extension):
            if target_obj.ambient.dim != alg.dim or target_obj.ambient.field != alg.field:
                raise LielabError("qann: extension does not live in the named algebra")
            targets = target_obj.sub
        elif target_obj is alg:
            targets = full
        else:
            raise LielabError("qann: second name must be the same algebra or an extension in it")
        result = qann(full, targets, alg, budget=budget)
        payload = {"count": len(result)}
        if len(result) <= _MAX_LISTED_ELEMENTS:
            payload["elements"] = _json_value(result.elements)
        else:
            payload["elements"] = None
            payload["note"] = f"{len(result)} elements, list suppressed"
        pair = result.non_closure_witness()
        payload["non_closure_witness"] = (
            None if pair is None else {"x": _json_value(pair[0]), "y": _json_value(pair[1]), "sum": _json_value(pair[2])}
        )
        return "holds", payload, []
    if kind == "center":
        from .algebra import center as center_of

        z = center_of(_as_algebra(env, args[0]))
        return "holds", _json_value(z), []
    if kind == "iz":
        d = der_algebra(_as_algebra(env, args[0]))
        ideal = restriction_ideal(d, "I_Z")
        return "holds", {"der_dim": d.lie.dim, "ideal": _json_value(ideal), "coords": "derivation basis"}, []
    if kind == "ikz":
        d = sder(_as_algebra(env, args[0]))
        ideal = restriction_ideal(d, "I_KZ")
        return "holds", {"sder_dim": d.lie.dim, "ideal": _json_value(ideal), "coords": "derivation basis"}, []
    if kind == "deg":
        res = degree(_as_algebra(env, args[0]), budget=budget)
        status = "undecided" if res.lower_bound_only else "holds"
        payload = {
            "degree": res.value,
            "lower_bound_only": res.lower_bound_only,
            "element": _json_value(res.witness),
        }
        return status, payload, []
    # thm
    thm, target = args
    if thm in ("qadann", "coruno"):
        inst = verify(thm, _as_extension(env, target), budget=budget)
    elif thm == "cordos":
        ext = _as_extension(env, target)
        inst = verify(thm, ext.ambient, ext.sub, budget=budget)
    else:
        inst = verify(thm, _as_algebra(env, target), budget=budget)
    failures = [{"which": which, "detail": _json_value(detail)} for which, detail in inst.hypothesis_failures]
    return inst.outcome, _serialize_instance(inst), failures


def execute(script: Script, budget: int | None = None, seed: int = 0) -> dict:
    """Run a parsed script and build the report.

    Declarations bind names; every check statement yields exactly one
    result.  Runtime errors are recorded on their statement and the run
    continues.  budget caps each enumeration (checks may override it
    with their own budget clause).
    """
    env = {}
    results = []
    default_budget = DEFAULT_BUDGET if budget is None else budget
    for index, stmt in enumerate(script.statements):
        start = time.perf_counter()
        entry = None
        try:
            if stmt.kind == "field":
                name = stmt.data[0]
                env[name] = Field.rationals() if stmt.data[1] == "Q" else Field.prime(stmt.data[2])
            elif stmt.kind == "algebra":
                name, fname, expr = stmt.data
                env[name] = _eval_expr(env[fname], expr, env)
            elif stmt.kind == "involution":
                name, spec = stmt.data
                alg = _as_algebra(env, name)
                if spec[0] == "matrix":
                    sigma = _coerce_rows(alg.field, spec[1], alg.dim, "involution matrix")
                    if len(spec[1]) != alg.dim:
                        raise LielabError(f"involution matrix must be {alg.dim} by {alg.dim}")
                    env[name] = attach_involution(alg, sigma)
                else:
                    env[name] = attach_involution(alg, spec[0])
            elif stmt.kind == "extension":
                name, qname, vectors = stmt.data
                q = _as_algebra(env, qname)
                rows = _coerce_rows(q.field, vectors, q.dim, "extension span")
                env[name] = make_extension(q, rows)
            else:
                kind, args, own_budget = stmt.data
                verdict, witness, failures = _run_check(
                    kind, args, env, default_budget if own_budget is None else own_budget
                )
                entry = {
                    "verdict": verdict,
                    "witness": witness,
                    "hypothesis_failures": failures,
                    "error": None,
                }
        except KeyError as err:
            entry = {
                "verdict": None,
                "witness": None,
                "hypothesis_failures": [],
                "error": {"type": "UndeclaredName", "message": f"name {err.args[0]!r} has no value"},
            }
        except Exception as err:
            entry = {
                "verdict": None,
                "witness": None,
                "hypothesis_failures": [],
                "error": {"type": type(err).__name__, "message": str(err)},
            }
        if entry is not None:
            elapsed = int(round((time.perf_counter() - start) * 1000))
            results.append(
                {
                    "statement_index": index,
                    "statement_text": format_statement(stmt),
                    "verdict": entry["verdict"],
                    "witness": entry["witness"],
                    "hypothesis_failures": entry["hypothesis_failures"],
                    "error": entry["error"],
                    "elapsed_ms": elapsed,
                }
            )
    return {
        "tool_version": __version__,
        "script_hash": script.source_hash,
        "budget": default_budget,
        "seed": seed,
        "results": results,
    }


def run_failed(report: dict, strict: bool = False) -> bool:
    """Exit-code policy: a run fails only on a failing check.

    Under strict, hypothesis failures, undecided verdicts, and recorded
    errors also fail the run.
    """
    for res in report["results"]:
        if res["verdict"] == "fails":
            return True
        if strict and res["verdict"] in (None, "undecided", "hypothesis_failed"):
            return True
        if strict and res["hypothesis_failures"]:
            return True
    return False


def report_json(report: dict) -> str:
    import json

    return json.dumps(report, indent=2) + "\n"
