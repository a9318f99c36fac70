"""Readers for the line-oriented input files.

All three formats share the same lexical rules: ``#`` starts a comment,
blank lines are ignored, rationals are written ``p/q`` or as integers and
are parsed exactly. Unknown sections and keys are errors.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .liealg import LieDataError, algebra_data


class ParseError(ValueError):
    def __init__(self, message, source="<input>", line=None):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise ValueError(f"not a rational number: {text!r}")
    value = Fraction(text)
    return value


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _read(path_or_text, source):
    if isinstance(path_or_text, Path) or (isinstance(path_or_text, str) and "\n" not in path_or_text
                                          and Path(path_or_text).is_file()):
        path = Path(path_or_text)
        return path.read_text(), source or str(path)
    return path_or_text, source or "<input>"


# embedding specifications

_BRACKETS = re.compile(r"\[([^\]]*)\]")


def _parse_groups(text, src, n):
    text = text.strip()
    groups = _BRACKETS.findall(text)
    if not groups or _BRACKETS.sub("", text).strip():
        raise ParseError(f"malformed label list {text!r}", src, n)
    out = []
    for g in groups:
        g = g.strip()
        try:
            out.append(tuple(parse_rational(x) for x in g.split(",")) if g else ())
        except ValueError as exc:
            raise ParseError(str(exc), src, n) from None
    return tuple(out)


def _split_fields(line, src, n):
    fields = {}
    # split on commas that are not inside brackets
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(line):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(line[start:i])
            start = i + 1
    parts.append(line[start:])
    for part in parts:
        if "=" not in part:
            raise ParseError(f"expected key=value, got {part.strip()!r}", src, n)
        key, value = (x.strip() for x in part.split("=", 1))
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", src, n)
        fields[key] = value
    return fields


def _bool(value, src, n):
    if value.lower() in ("true", "yes", "1"):
        return True
    if value.lower() in ("false", "no", "0"):
        return False
    raise ParseError(f"expected true or false, got {value!r}", src, n)


def parse_embedding(path_or_text, source=None):
    """Parse an embedding specification into a ``conformal.EmbeddingSpec``."""
    from .conformal import AdjointBranching, BranchComponent, EmbeddingSpec, SubIdeal

    text, src = _read(path_or_text, source)
    section = None
    ambient, subs, projection, branching = {}, {}, [], []
    for n, line in _lines(text):
        m = re.fullmatch(r"\[([A-Za-z0-9_.]+)\]", line)
        if m:
            section = m.group(1)
            if section.startswith("sub."):
                idx = section[4:]
                if not idx.isdigit():
                    raise ParseError(f"bad section name [{section}]", src, n)
                if int(idx) in subs:
                    raise ParseError(f"duplicate section [{section}]", src, n)
                subs[int(idx)] = {}
            elif section not in ("ambient", "projection", "branching"):
                raise ParseError(f"unknown section [{section}]", src, n)
            continue
        if section is None:
            raise ParseError("content before the first section", src, n)
        if section == "projection":
            try:
                projection.append(tuple(parse_rational(x) for x in re.split(r"[\s,]+", line)))
            except ValueError as exc:
                raise ParseError(str(exc), src, n) from None
            continue
        if section == "branching":
            fields = _split_fields(line, src, n)
            unknown = set(fields) - {"labels", "mult", "inside", "factor"}
            if unknown or "labels" not in fields:
                raise ParseError(f"unknown or missing keys in branching row: {sorted(unknown)}", src, n)
            try:
                mult = int(fields.get("mult", "1"))
                factor = int(fields.get("factor", "0"))
            except ValueError:
                raise ParseError("mult and factor must be integers", src, n) from None
            branching.append((_parse_groups(fields["labels"], src, n), mult,
                              _bool(fields.get("inside", "false"), src, n), factor, n))
            continue
        if "=" not in line:
            raise ParseError(f"expected key = value, got {line!r}", src, n)
        key, value = (x.strip() for x in line.split("=", 1))
        target = ambient if section == "ambient" else subs[int(section[4:])]
        allowed = {"algebra", "level"} if section == "ambient" else {"algebra", "abelian", "kappa"}
        if key not in allowed:
            raise ParseError(f"unknown key {key!r} in [{section}]", src, n)
        if key in target:
            raise ParseError(f"duplicate key {key!r}", src, n)
        target[key] = (value, n)

    if "algebra" not in ambient or "level" not in ambient:
        raise ParseError("[ambient] needs algebra and level", src)
    try:
        algs = [algebra_data(a.strip()) for a in ambient["algebra"][0].split(",")]
    except LieDataError as exc:
        raise ParseError(str(exc), src, ambient["algebra"][1]) from None
    try:
        levels = [int(x) for x in ambient["level"][0].split(",")]
    except ValueError:
        raise ParseError("levels must be integers", src, ambient["level"][1]) from None
    if len(levels) != len(algs) or any(k < 1 for k in levels):
        raise ParseError("one positive level per ambient factor is required", src, ambient["level"][1])
    if not subs:
        raise ParseError("at least one [sub.N] section is required", src)

    ideals = []
    for idx in sorted(subs):
        entry = subs[idx]
        try:
            if "algebra" in entry:
                if "abelian" in entry or "kappa" in entry:
                    raise ParseError(f"[sub.{idx}] mixes simple and abelian keys", src, entry["algebra"][1])
                ideals.append(SubIdeal(algebra=algebra_data(entry["algebra"][0])))
            elif "abelian" in entry:
                dim = int(entry["abelian"][0])
                kappa = parse_rational(entry["kappa"][0]) if "kappa" in entry else None
                ideals.append(SubIdeal(abelian_dim=dim, kappa=kappa))
            else:
                raise ParseError(f"[sub.{idx}] needs algebra or abelian", src)
        except (LieDataError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), src) from None

    total_rank = sum(a.rank for a in algs)
    proj = None
    if projection:
        want = sum(s.rank for s in ideals)
        if len(projection) != want or any(len(r) != total_rank for r in projection):
            raise ParseError(f"projection must be {want} rows of {total_rank} entries", src)
        proj = tuple(projection)
    declared = None
    if branching:
        comps = []
        for labels, mult, inside, factor, n in branching:
            if len(labels) != len(ideals):
                raise ParseError("one label group per ideal is required", src, n)
            fixed = []
            for s, lab in zip(ideals, labels):
                if len(lab) != s.rank:
                    raise ParseError(f"label {lab} has the wrong length", src, n)
                if not s.is_abelian:
                    if any(x.denominator != 1 or x < 0 for x in lab):
                        raise ParseError("Dynkin labels must be non-negative integers", src, n)
                    lab = tuple(int(x) for x in lab)
                fixed.append(tuple(lab))
            if mult < 1 or not 0 <= factor < len(algs):
                raise ParseError("bad mult or factor", src, n)
            comps.append(BranchComponent(tuple(fixed), mult, inside, factor))
        declared = AdjointBranching(tuple(comps))
    if proj is None and declared is None:
        raise ParseError("either [projection] or [branching] is required", src)
    name = Path(src).stem if src != "<input>" else ""
    return EmbeddingSpec(tuple(zip(algs, levels)), tuple(ideals), proj, declared, name)


# branching claims

_CLAIM_HEADER_KEYS = {"k1", "k2", "m", "l1", "l2"}
_PAIR = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)")


def parse_branching_claim(path_or_text, source=None):
    """Parse a claim file into a ``characters.BranchingClaim``."""
    from .characters import BranchingClaim, ClaimRow

    text, src = _read(path_or_text, source)
    header, rows = None, []
    for n, line in _lines(text):
        if header is None:
            fields = _split_fields(line, src, n)
            unknown = set(fields) - _CLAIM_HEADER_KEYS
            if unknown or not {"k1", "k2", "m"} <= set(fields):
                raise ParseError("header needs k1, k2, m (optionally l1, l2)", src, n)
            try:
                header = {k: int(v) for k, v in fields.items()}
            except ValueError:
                raise ParseError("header values must be integers", src, n) from None
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 2 or not parts[0].startswith("target=") or not parts[1].startswith("coset="):
            raise ParseError("expected 'target=<l> ; coset=(h, mult), ...'", src, n)
        try:
            target = int(parts[0][len("target="):])
        except ValueError:
            raise ParseError("target must be an integer", src, n) from None
        body = parts[1][len("coset="):].strip()
        pairs = _PAIR.findall(body)
        if not pairs or _PAIR.sub("", body).replace(",", "").strip():
            raise ParseError(f"malformed coset list {body!r}", src, n)
        try:
            cosets = [(parse_rational(h), int(mult)) for h, mult in pairs]
        except ValueError as exc:
            raise ParseError(str(exc), src, n) from None
        if any(mu < 1 for _, mu in cosets):
            raise ParseError("multiplicities must be positive", src, n)
        if any(r.target == target for r in rows):
            raise ParseError(f"duplicate target {target}", src, n)
        rows.append(ClaimRow(target, cosets))
    if header is None:
        raise ParseError("empty claim file", src)
    if not (0 <= header.get("l1", 0) <= header["k1"] and 0 <= header.get("l2", 0) <= header["k2"]):
        raise ParseError("ambient labels outside their alcoves", src)
    return BranchingClaim(header["k1"], header["k2"], header["m"], rows,
                          header.get("l1", 0), header.get("l2", 0))


# branching tables

def _split_top(text, sep):
    """Split on ``sep`` outside any brackets or parentheses."""
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


_TERM = re.compile(r"\((.*)\)\s*(?:\*\s*(\d+))?", re.S)


def _parse_bundle(text, src, n):
    from .liealg import Sector

    out = []
    for term in _split_top(text, "+"):
        m = _TERM.fullmatch(term)
        if not m:
            raise ParseError(f"malformed sector {term!r}", src, n)
        fields = _split_top(m.group(1), ",")
        if len(fields) != 3 or not fields[1].startswith("h=") or not fields[2].startswith("d="):
            raise ParseError(f"expected (label,h=p/q,d=float), got {term!r}", src, n)
        try:
            h = parse_rational(fields[1][2:])
            d = float(fields[2][2:])
        except ValueError as exc:
            raise ParseError(str(exc), src, n) from None
        if d < 1 - 1e-9:
            raise ParseError(f"statistical dimension {d} is below 1", src, n)
        mult = int(m.group(2) or 1)
        if mult < 1:
            raise ParseError("multiplicities must be positive", src, n)
        out.append((Sector(fields[0], h, d), mult))
    return tuple(out)


def parse_branching_table(path_or_text, source=None):
    """Parse a branching table into a ``fusion.BranchingTable``."""
    from .fusion import BranchingTable, TableRow

    text, src = _read(path_or_text, source)
    rows = []
    for n, line in _lines(text):
        vacuum = False
        if line.startswith("vacuum"):
            vacuum, line = True, line[len("vacuum"):].strip()
        halves = _split_top(line, "|")
        if len(halves) != 2 or not halves[0].startswith("A:") or not halves[1].startswith("C:"):
            raise ParseError("expected '[vacuum] A: ... | C: ...'", src, n)
        rows.append(TableRow(_parse_bundle(halves[0][2:].strip(), src, n),
                             _parse_bundle(halves[1][2:].strip(), src, n), vacuum))
    if not rows:
        raise ParseError("empty branching table", src)
    try:
        return BranchingTable(tuple(rows), Path(src).stem if src != "<input>" else "")
    except ValueError as exc:
        raise ParseError(str(exc), src) from None
