"""Text formats: hypergraph files, splitting-function specs, CNF, sweep CSV.

Hypergraph files (``.hgr``)::

    % comments start with % or #
    % terminals a,b,c          (optional, read by solve-mc)
    4 2 weighted               n m [weighted]
    2 1 2 3                    [weight] nodes...
    1 a b c d ; cb 1 3/2       optional per-edge split spec after ';'

Node tokens are 1-based ids when every token in the file is an integer;
otherwise every token is a label and labels get ids in order of first use.
"""
from __future__ import annotations

import csv
import os
import re
from fractions import Fraction
from typing import Iterable, TextIO

from . import multiway as mw
from . import splitting as sp
from .errors import ParseError
from .hardness import CNF
from .hypergraph import Hypergraph, make_edge
from .numeric import as_rational, fmt


# -- split specs --------------------------------------------------------------------

def _rationals(tokens, what):
    try:
        return [as_rational(t) for t in tokens]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number in {what}: {' '.join(tokens)}") from None


def _braced(body: str, what: str) -> list[tuple[str, str]]:
    m = re.fullmatch(r"\s*\{(.*)\}\s*", body, flags=re.S)
    if not m:
        raise ParseError(f"{what} entries must be wrapped in braces")
    out = []
    for item in filter(None, (x.strip() for x in m.group(1).split(","))):
        if ":" not in item:
            raise ParseError(f"{what} entry {item!r} lacks ':'")
        key, val = item.split(":", 1)
        out.append((key.strip(), val.strip()))
    return out


def _optional_scale(args, name) -> Fraction:
    if len(args) > 1:
        raise ParseError(f"{name} takes at most one weight")
    return _rationals(args, name)[0] if args else Fraction(1)


def parse_split(spec: str, r: int):
    """Build the splitting function named by ``spec`` for an edge of arity ``r``.

    Two-way forms: ``aon [c]``, ``linear [c]``, ``quadratic [c]``,
    ``discount <alpha> [c]``, ``lm <alpha> [c]``, ``cb <w1> ...``,
    ``acb <y1> ... <y_(r-1)>``, ``table { mask:p, ... }`` (unlisted subsets 0),
    ``symtable { mask:p, ... }`` (complements filled in), ``needy <z> [c]``.

    Multiway forms: ``move <m1> ...``, ``cluster <h2> ...``, ``sed [c]``,
    ``km1 [c]``, ``rainbow [c]``, ``mdiscount <alpha> [c]``,
    ``sig { 2+1+1:p, ... }``.

    ``cb`` and ``move``/``cluster`` vectors are cut or padded with their last
    value to fit ``r``.
    """
    spec = spec.strip()
    if not spec:
        raise ParseError("empty split spec")
    head, _, rest = spec.partition(" ")
    kind = head.lower()
    args = rest.split()
    try:
        if kind == "aon":
            return sp.all_or_nothing(r, _optional_scale(args, kind))
        if kind == "linear":
            return sp.linear(r, _optional_scale(args, kind))
        if kind == "quadratic":
            return sp.quadratic(r, _optional_scale(args, kind))
        if kind in ("discount", "lm", "mdiscount"):
            if not args:
                raise ParseError(f"{kind} needs an exponent")
            alpha = _rationals(args[:1], kind)[0]
            c = _optional_scale(args[1:], kind)
            factory = {"discount": sp.discount, "lm": sp.lm_submodular, "mdiscount": mw.discount}[kind]
            return factory(r, alpha, c)
        if kind == "cb":
            return sp.SymmetricCB(r, _fit(_rationals(args, kind), r // 2, kind))
        if kind == "acb":
            return sp.AsymmetricCB(r, _rationals(args, kind))
        if kind in ("table", "symtable"):
            entries = {}
            for key, val in _braced(rest, kind):
                entries[int(key, 0)] = _rationals([val], kind)[0]
            return sp.GeneralTable.from_dict(r, entries, symmetric=kind == "symtable")
        if kind == "needy":
            if not args:
                raise ParseError("needy needs a slot index")
            return sp.NeedyNode(r, int(args[0]), _optional_scale(args[1:], kind))
        if kind == "move":
            return mw.MoveBased(r, _fit(_rationals(args, kind), r - 1, kind))
        if kind == "cluster":
            return mw.ClusterBased(r, _fit(_rationals(args, kind), r - 1, kind))
        if kind == "sed":
            return mw.sum_external_degrees(r, _optional_scale(args, kind))
        if kind == "km1":
            return mw.k_minus_one(r, _optional_scale(args, kind))
        if kind == "rainbow":
            return mw.rainbow_split(r, _optional_scale(args, kind))
        if kind == "sig":
            table = {}
            for key, val in _braced(rest, kind):
                table[tuple(int(x) for x in key.split("+"))] = _rationals([val], kind)[0]
            return mw.SignatureBased(r, table)
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError(f"{spec!r}: {exc}") from None
    raise ParseError(f"unknown split kind {head!r}")


def _fit(values: list, size: int, what: str) -> list:
    if not values:
        raise ParseError(f"{what} needs at least one value")
    if len(values) >= size:
        return values[:size]
    return values + [values[-1]] * (size - len(values))


def split_spec(f) -> str:
    return f.spec()


# -- hypergraph files ---------------------------------------------------------------

def _content_lines(lines: Iterable[str]):
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        if text[0] in "%#":
            yield lineno, None, text[1:].strip()
        else:
            yield lineno, text, None


def parse_hypergraph(src: TextIO | str | os.PathLike, split: str = "aon") -> Hypergraph:
    """Read an ``.hgr`` file.  ``split`` is the default spec for lines without ``;``."""
    if not hasattr(src, "read"):
        with open(src) as fh:
            return parse_hypergraph(fh, split)
    rows = list(_content_lines(src))
    body = [(ln, text) for ln, text, _ in rows if text is not None]
    if not body:
        raise ParseError("missing header line")
    ln, header = body[0]
    parts = header.split()
    if len(parts) not in (2, 3):
        raise ParseError("header must be 'n m [weighted]'", ln)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header counts must be integers", ln) from None
    weighted = len(parts) == 3 and parts[2].lower() in ("weighted", "1", "w")
    if len(parts) == 3 and not weighted and parts[2] != "0":
        raise ParseError(f"unknown header flag {parts[2]!r}", ln)
    lines = body[1:]
    if len(lines) != m:
        raise ParseError(f"header promises {m} edges, found {len(lines)}", ln)

    parsed = []
    for ln, text in lines:
        nodes_part, _, override = text.partition(";")
        tokens = nodes_part.split()
        weight = Fraction(1)
        if weighted:
            if not tokens:
                raise ParseError("missing edge weight", ln)
            try:
                weight = as_rational(tokens.pop(0))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad edge weight {text.split()[0]!r}", ln) from None
            if weight < 0:
                raise ParseError("negative edge weight", ln)
        if len(tokens) < 2:
            raise ParseError("an edge needs at least 2 nodes", ln)
        if len(set(tokens)) != len(tokens):
            raise ParseError("duplicate node in edge", ln)
        parsed.append((ln, tokens, weight, override.strip() or None))

    numeric = all(re.fullmatch(r"\d+", t) for _, toks, _, _ in parsed for t in toks)
    labels: dict[int, str] = {}
    ids: dict[str, int] = {}
    if not numeric:
        # a "% labels a b c" comment fixes the id order up front
        for ln, _, comment in rows:
            if comment and comment.split()[:1] == ["labels"]:
                for name in comment.split()[1:]:
                    if name in ids:
                        raise ParseError(f"label {name!r} listed twice", ln)
                    if len(ids) >= n:
                        raise ParseError(f"more than {n} labels listed", ln)
                    ids[name] = len(ids)
                    labels[ids[name]] = name

    def node_id(token, ln):
        if numeric:
            v = int(token)
            if not 1 <= v <= n:
                raise ParseError(f"node id {v} outside 1..{n}", ln)
            return v - 1
        if token not in ids:
            if len(ids) >= n:
                raise ParseError(f"more than {n} distinct node labels", ln)
            ids[token] = len(ids)
            labels[ids[token]] = token
        return ids[token]

    edges = []
    for ln, tokens, weight, override in parsed:
        nodes = [node_id(t, ln) for t in tokens]
        try:
            f = parse_split(override or split, len(nodes))
        except ParseError as exc:
            raise ParseError(str(exc), ln) from None
        if weight != 1:
            f = f.scaled(weight)
        edges.append(make_edge(nodes, f))
    return Hypergraph(n, tuple(edges), labels or None)


def read_terminals(src: TextIO | str | os.PathLike) -> list[str] | None:
    """Labels from a ``% terminals a,b,c`` comment, if present."""
    if not hasattr(src, "read"):
        with open(src) as fh:
            return read_terminals(fh)
    for _, _, comment in _content_lines(src):
        if comment and comment.lower().startswith("terminals"):
            return [x.strip() for x in comment[len("terminals"):].replace(",", " ").split()]
    return None


def format_hypergraph(H: Hypergraph, weighted: bool = False) -> str:
    """Write ``H`` with an explicit ``; spec`` per edge so it parses back identically."""
    lines = [f"{H.n} {len(H.edges)}"]
    use_labels = bool(H.labels) and len(H.labels) == H.n and all(
        not re.fullmatch(r"\d+", x) and " " not in x for x in H.labels.values())
    for e in H.edges:
        nodes = " ".join(H.labels[v] if use_labels else str(v + 1) for v in e.nodes)
        lines.append(f"{nodes} ; {e.splitting.spec()}")
    if use_labels:
        # order labels by id so re-interning reproduces the same numbering
        lines.insert(0, "% labels " + " ".join(H.labels[v] for v in range(H.n)))
    return "\n".join(lines) + "\n"


def node_lookup(H: Hypergraph, token: str) -> int:
    """Node id for a label, or for a 1-based id when ``H`` has no labels."""
    if H.labels:
        for v, name in H.labels.items():
            if name == token:
                return v
    if re.fullmatch(r"\d+", token) and not H.labels:
        v = int(token) - 1
        if 0 <= v < H.n:
            return v
    raise KeyError(token)


# -- SAT inputs ---------------------------------------------------------------------

def parse_dimacs_cnf(src: TextIO | str | os.PathLike) -> CNF:
    if not hasattr(src, "read"):
        with open(src) as fh:
            return parse_dimacs_cnf(fh)
    num_vars = None
    clauses, current = [], []
    for lineno, raw in enumerate(src, start=1):
        text = raw.strip()
        if not text or text[0] in "c%":
            continue
        if text.startswith("p"):
            parts = text.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", lineno)
            num_vars = int(parts[2])
            continue
        try:
            lits = [int(x) for x in text.split()]
        except ValueError:
            raise ParseError(f"bad literal in {text!r}", lineno) from None
        for lit in lits:
            if lit == 0:
                if current:
                    clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        raise ParseError("missing 'p cnf' line")
    try:
        return CNF(num_vars, tuple(clauses))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_nae_clauses(src: TextIO | str | os.PathLike) -> tuple[int, list[tuple[int, int, int]]]:
    """Integer triples, one clause per line.  Returns (number of variables, clauses)."""
    if not hasattr(src, "read"):
        with open(src) as fh:
            return parse_nae_clauses(fh)
    clauses = []
    for lineno, raw in enumerate(src, start=1):
        text = raw.split("#")[0].strip()
        if not text:
            continue
        try:
            c = tuple(int(x) for x in text.replace(",", " ").split())
        except ValueError:
            raise ParseError(f"bad clause {text!r}", lineno) from None
        if len(c) != 3 or min(c) < 1:
            raise ParseError("clauses are three positive variable ids", lineno)
        clauses.append(c)
    return max((max(c) for c in clauses), default=0), clauses


# -- sweep CSV ----------------------------------------------------------------------

CSV_COLUMNS = ["w2", "p", "q", "value_p", "value_q", "source_size", "jaccard_num", "jaccard_den"]
FLOAT_COLUMNS = ["w2", "value", "source_size", "jaccard"]


def write_sweep_csv(rows, out: TextIO, as_float: bool = False) -> None:
    writer = csv.writer(out, lineterminator="\n")
    if as_float:
        writer.writerow(FLOAT_COLUMNS)
        for r in rows:
            writer.writerow([f"{float(r.w2):.6g}", f"{float(r.value):.10g}", r.source_size, f"{float(r.jaccard):.6g}"])
        return
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        w2, v = Fraction(r.w2), Fraction(r.value)
        writer.writerow([fmt(w2), w2.numerator, w2.denominator, v.numerator, v.denominator,
                         r.source_size, r.inter, r.union])


def read_sweep_csv(src: TextIO):
    from .experiment import SweepRow

    reader = csv.DictReader(src)
    if reader.fieldnames != CSV_COLUMNS:
        raise ParseError(f"expected columns {','.join(CSV_COLUMNS)}")
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        try:
            w2 = Fraction(int(rec["p"]), int(rec["q"]))
            if as_rational(rec["w2"]) != w2:
                raise ParseError("w2 disagrees with p/q", lineno)
            rows.append(SweepRow(w2, Fraction(int(rec["value_p"]), int(rec["value_q"])), int(rec["source_size"]),
                                 int(rec["jaccard_num"]), int(rec["jaccard_den"])))
        except (ValueError, TypeError, ZeroDivisionError):
            raise ParseError("malformed row", lineno) from None
    return rows
