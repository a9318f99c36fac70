"""Command-line front end: ``coset-kit <subcommand> ...``.

Exit codes: 0 pass, 1 a checked claim is false, 2 usage or input error,
3 internal inconsistency (theorem violation or contradictory data).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import characters, conformal, fusion, liealg, mobius, modealg, specfiles

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3

# grade caps and defaults per subcommand
GRADE_LIMITS = {"branch-verify": (6, 5), "mode-verify": (6, 4)}
DEFAULT_GRADE = 6


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


@dataclass
class RunConfig:
    subcommand: str
    args: argparse.Namespace
    grade: int
    format: str = "table"
    tolerance: float | None = None
    out: str | None = None
    color: bool = False


@dataclass
class Output:
    config: RunConfig
    tables: list = field(default_factory=list)
    machine: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def table(self, headers, rows, title=None):
        self.tables.append((title, list(headers), [[fmt(x) for x in r] for r in rows]))

    def line(self, text):
        self.machine.append(text)

    def note(self, text):
        self.notes.append(text)

    def status(self, ok: bool) -> str:
        word = "pass" if ok else "fail"
        if self.config.color and self.config.format == "table":
            return f"\x1b[{32 if ok else 31}m{word}\x1b[0m"
        return word

    def render(self) -> str:
        buf = io.StringIO()
        if self.config.format == "csv":
            writer = csv.writer(buf, lineterminator="\n")
            for title, headers, rows in self.tables:
                if title:
                    buf.write(f"# {title}\n")
                writer.writerow(headers)
                writer.writerows(rows)
        else:
            for title, headers, rows in self.tables:
                if title:
                    buf.write(f"{title}\n")
                widths = [max(len(str(c)) for c in col) for col in zip(headers, *rows)]
                for r in [headers, *rows]:
                    buf.write("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
                buf.write("\n")
            for n in self.notes:
                buf.write(f"{n}\n")
        for m in self.machine:
            buf.write(f"{m}\n")
        return buf.getvalue()


def _rationals(text: str) -> list:
    try:
        return [specfiles.parse_rational(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _floats(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _leveled(term: str):
    name, _, level = term.rpartition(":")
    if not name:
        raise UsageError(f"expected ALGEBRA:LEVEL, got {term!r}")
    try:
        return liealg.algebra_data(name), int(level)
    except (liealg.LieDataError, ValueError) as exc:
        raise UsageError(str(exc)) from None


# subcommands

def cmd_mobius(cfg: RunConfig, out: Output) -> int:
    a = cfg.args
    tol = cfg.tolerance if cfg.tolerance is not None else 1e-10
    if a.action in ("decompose", "root"):
        if not a.matrix:
            raise UsageError(f"mobius {a.action} needs --matrix a,b,c,d")
        vals = _floats(a.matrix)
        if len(vals) != 4:
            raise UsageError("--matrix needs four entries")
        try:
            g = mobius.GroupElement.from_matrix([[vals[0], vals[1]], [vals[2], vals[3]]])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if a.action == "decompose":
            p, tau, t = mobius.iwasawa_decompose(g)
            back = mobius.compose(mobius.translation(p), mobius.dilation(tau), mobius.rotation(t))
            err = back.distance(g)
            out.table(["translation", "dilation", "rotation", "round_trip_error"], [[p, tau, t, err]])
            return EXIT_OK if err <= tol else EXIT_INCONSISTENT
        h = mobius.sqrt_in_psl(g)
        err = (h @ h).distance(g)
        out.table(["a", "b", "c", "d", "residual"], [[h.a, h.b, h.c, h.d, err]])
        return EXIT_OK if err <= max(tol, 1e-9) else EXIT_INCONSISTENT
    rows = []
    grid = [x / 4 for x in range(-12, 13)]
    worst_d = max(mobius.dilation_word(x).distance(mobius.dilation(x)) for x in grid)
    worst_r = max(mobius.rotation_word(x).distance(mobius.rotation(2 * x))
                  for x in grid if abs(x) < math.pi)
    rows.append(["dilation word", len(grid), worst_d, out.status(worst_d <= tol)])
    rows.append(["rotation word", len(grid), worst_r, out.status(worst_r <= tol)])
    worst_i = 0.0
    count = 0
    for p in grid[::3]:
        for tau in grid[::3]:
            for t in grid[1::3]:
                g = mobius.compose(mobius.translation(p), mobius.dilation(tau), mobius.rotation(t))
                back = mobius.compose(*(f(x) for f, x in zip(
                    (mobius.translation, mobius.dilation, mobius.rotation), mobius.iwasawa_decompose(g))))
                worst_i = max(worst_i, back.distance(g))
                count += 1
    rows.append(["iwasawa round trip", count, worst_i, out.status(worst_i <= tol)])
    out.table(["identity", "samples", "worst_error", "status"], rows)
    return EXIT_OK if max(worst_d, worst_r, worst_i) <= tol else EXIT_FALSE


def cmd_central_charge(cfg: RunConfig, out: Output) -> int:
    a = cfg.args
    amb = [_leveled(t) for t in a.terms]
    ambient = conformal.LeveledAlgebra(tuple(amb))
    c_amb = conformal.sugawara_central_charge(ambient)
    rows = [[alg.name, k, conformal.sugawara_central_charge(conformal.LeveledAlgebra(((alg, k),)))]
            for alg, k in amb]
    if a.sub:
        sub = conformal.LeveledAlgebra(tuple(_leveled(t) for t in a.sub))
        try:
            c = conformal.coset_central_charge(ambient, sub)
        except conformal.InconsistencyError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INCONSISTENT
        out.table(["algebra", "level", "c"], rows)
        m = conformal.is_discrete(c)
        out.line(f"c={fmt(c_amb)} sub_c={fmt(conformal.sugawara_central_charge(sub))} coset_c={fmt(c)}"
                 + (f" discrete_m={m}" if m else ""))
        return EXIT_OK
    out.table(["algebra", "level", "c"], rows)
    out.line(f"c={fmt(c_amb)}")
    return EXIT_OK


def cmd_conformal_check(cfg: RunConfig, out: Output) -> int:
    a = cfg.args
    spec = specfiles.parse_embedding(a.file)
    indices = None
    if a.indices:
        indices = [_rationals(x) for x in a.indices.split(";")]
        indices = [x[0] if len(x) == 1 else x for x in indices]
    rep = conformal.classify_inclusion(spec, indices)
    rows = []
    for comp, (_, value) in zip(rep.branching.components, rep.casimir_spectrum):
        labels = " ".join("[" + ",".join(fmt(x) if isinstance(x, Fraction) and x.denominator != 1
                                         else str(int(x)) for x in lab) + "]" for lab in comp.labels)
        rows.append([labels, comp.mult, comp.factor, "yes" if comp.inside else "no", value])
    out.table(["labels", "mult", "factor", "inside", "casimir"], rows, title=spec.name or None)
    out.table(["ideal", "dynkin_index", "induced_level"],
              [[i, ",".join(fmt(x) for x in (ix if isinstance(ix, list) else [ix])),
                ",".join(fmt(x) for x in (lv if isinstance(lv, list) else [lv]))]
               for i, (ix, lv) in enumerate(zip(rep.dynkin_indices, rep.induced_levels))])
    out.note(f"route: {rep.route}")
    out.line(f"verdict={rep.verdict} coset_c={fmt(rep.coset_central_charge)}")
    if a.expect == "any" or rep.verdict == a.expect:
        return EXIT_OK
    return EXIT_FALSE


def cmd_mode_verify(cfg: RunConfig, out: Output) -> int:
    a = cfg.args
    N = cfg.grade
    ok = True
    rows = []
    for k in a.level:
        for rep in modealg.sugawara_verify(k, N, a.modes):
            rows.append([f"k={k}", rep.name, rep.max_grade, rep.checks, rep.residual, out.status(rep.passed)])
            ok &= rep.passed
        cur = modealg.current_relations_verify(k, N, a.modes)
        rows.append([f"k={k}", cur.name, cur.max_grade, cur.checks, cur.residual, out.status(cur.passed)])
        ok &= cur.passed
        eb = modealg.energy_bound_check(k, min(N, a.bound_grade))
        rows.append([f"k={k}", "energy bound", eb.N, eb.checks, eb.worst_ratio, out.status(eb.passed)])
        ok &= eb.passed
    out.table(["case", "identity", "grade", "checks", "residual", "status"], rows)
    if a.phi:
        prow = []
        for n in a.phi:
            nr = modealg.phi_null_report(n, max(n, 2))
            cert = modealg.no_set_certificate(n)
            prow.append([n, ",".join(str(g) for g in nr.null_grades), cert.kind,
                         "" if cert.phi_norm is None else cert.phi_norm,
                         "" if cert.c_gamma_squared is None else cert.c_gamma_squared,
                         "" if cert.quasi_primary_norm is None else cert.quasi_primary_norm,
                         out.status(nr.passed)])
            ok &= nr.passed
        out.table(["n", "null_grades", "certificate", "phi_norm", "c_gamma2", "qp_norm", "status"], prow)
    out.line(f"mode_verify={'pass' if ok else 'fail'}")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_branch_verify(cfg: RunConfig, out: Output) -> int:
    a = cfg.args
    claim = specfiles.parse_branching_claim(a.file)
    rep = characters.verify_branching(claim, cfg.grade)
    rows = [[r.target, out.status(r.passed), "" if r.first_failure is None else r.first_failure, r.detail]
            for r in rep.rows]
    out.table(["target", "status", "first_failure", "detail"], rows,
              title=f"k1={claim.k1} k2={claim.k2} m={claim.m} grade={cfg.grade}")
    out.line(f"branching={'pass' if rep.passed else 'fail'}")
    return EXIT_OK if rep.passed else EXIT_FALSE


def cmd_sectors(cfg: RunConfig, out: Output) -> int:
    a = cfg.args
    if a.minimal is not None:
        if a.minimal < 1:
            raise UsageError("--minimal needs m >= 1")
        table = fusion.minimal_model_table(a.minimal)
        out.table(["r", "s", "h", "d"], [[lab.r, lab.s, h, d] for lab, h, d in table])
        if a.fuse:
            ring = fusion.minimal_ring(a.minimal)
            x, y = (_kac(a.minimal, t) for t in a.fuse)
            prod = fusion.fuse(ring, x, y)
            out.line("fusion=" + " + ".join(f"{n}*({r},{s})" if n > 1 else f"({r},{s})"
                                            for (r, s), n in sorted(prod.items())))
        return EXIT_OK
    if a.algebra is None or a.level is None:
        raise UsageError("sectors needs --minimal M or --algebra NAME --level K")
    try:
        alg = liealg.algebra_data(a.algebra)
        secs = [liealg.sector_data(alg, a.level, lam) for lam in liealg.alcove_sectors(alg, a.level)]
    except liealg.LieDataError as exc:
        raise UsageError(str(exc)) from None
    out.table(["label", "h", "d"], [["(" + ",".join(map(str, s.label)) + ")", s.h, s.d] for s in secs])
    out.line(f"mu={fmt(fusion.mu_index([s.d for s in secs]))}")
    if a.fuse:
        if alg.cartan_type != "A" or alg.rank != 1:
            raise UsageError("--fuse is available for su(2) and minimal models")
        x, y = (_int(t) for t in a.fuse)
        prod = fusion.fuse(fusion.su2_ring(a.level), x, y)
        out.line("fusion=" + " + ".join(str(c) for c in sorted(prod)))
    return EXIT_OK


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer label, got {text!r}") from None


def _kac(m, text):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected r,s got {text!r}")
    try:
        lab = fusion.KacLabel(m, int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return lab


def cmd_mu_index(cfg: RunConfig, out: Output) -> int:
    dims = _floats(cfg.args.dims)
    try:
        mu = fusion.mu_index(dims)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.line(f"mu={fmt(mu)}")
    return EXIT_OK


def cmd_coupling_solve(cfg: RunConfig, out: Output) -> int:
    table = specfiles.parse_branching_table(cfg.args.file)
    tol = cfg.tolerance if cfg.tolerance is not None else fusion.DIM_TOLERANCE
    try:
        cm = fusion.coupling_solve(table, tol)
    except fusion.CouplingUnresolved as exc:
        print(f"unresolved: {exc}", file=sys.stderr)
        return EXIT_FALSE
    rows = []
    for u, v in cm.pairs:
        a_lab = " + ".join(str(s.label) for s, _ in table.rows[u].a_bundle)
        c_lab = " + ".join(str(s.label) for s, _ in table.rows[v].c_bundle)
        rows.append([u, v, a_lab, c_lab, cm.a_dims[u], cm.c_dims[v]])
    out.table(["u", "v", "A", "C", "dA", "dC"], rows, title=table.name or None)
    out.note(f"index A: {fmt(cm.a_index)}  index C: {fmt(cm.c_index)}  unique: {fmt(cm.unique)}")
    out.note("checks: " + " ".join(f"{k}={out.status(v)}" for k, v in cm.checks.items()))
    for u, v in cm.pairs:
        out.line(f"pair {u}->{v} dA={fmt(cm.a_dims[u])} dC={fmt(cm.c_dims[v])}")
    out.line(f"index_A={fmt(cm.a_index)} index_C={fmt(cm.c_index)} unique={fmt(cm.unique)}")
    return EXIT_OK if all(cm.checks.values()) else EXIT_FALSE


def cmd_sharp_test(cfg: RunConfig, out: Output) -> int:
    ok, offenders = fusion.sharp_action_test(_rationals(cfg.args.h))
    out.line(f"sharp={fmt(ok)}")
    for h in offenders:
        out.line(f"offender {h}")
    return EXIT_OK if ok else EXIT_FALSE


COMMANDS = {
    "mobius": cmd_mobius,
    "central-charge": cmd_central_charge,
    "conformal-check": cmd_conformal_check,
    "mode-verify": cmd_mode_verify,
    "branch-verify": cmd_branch_verify,
    "sectors": cmd_sectors,
    "mu-index": cmd_mu_index,
    "coupling-solve": cmd_coupling_solve,
    "sharp-test": cmd_sharp_test,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--grade", type=int, default=None, help="truncation grade N")
    common.add_argument("--format", choices=("table", "csv"), default="table")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--out", default=None, help="write output to PATH")

    p = _Parser(prog="coset-kit", description="Exact checks for coset conformal field theory.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("mobius", parents=[common], help="PSL(2,R) decompositions and identities")
    s.add_argument("action", choices=("decompose", "root", "verify"))
    s.add_argument("--matrix", help="a,b,c,d with ad-bc=1")

    s = sub.add_parser("central-charge", parents=[common], help="Sugawara and coset central charges")
    s.add_argument("terms", nargs="+", metavar="ALGEBRA:LEVEL")
    s.add_argument("--sub", nargs="+", metavar="ALGEBRA:LEVEL")

    s = sub.add_parser("conformal-check", parents=[common], help="classify an embedding file")
    s.add_argument("file")
    s.add_argument("--expect", choices=("conformal", "nonconformal", "any"), default="conformal")
    s.add_argument("--indices", help="override Dynkin indices, ideals separated by ';'")

    s = sub.add_parser("mode-verify", parents=[common], help="Sugawara, current relations, energy bounds")
    s.add_argument("--level", type=int, nargs="+", default=[1])
    s.add_argument("--modes", type=int, default=2)
    s.add_argument("--bound-grade", type=int, default=3)
    s.add_argument("--phi", type=int, nargs="*")

    s = sub.add_parser("branch-verify", parents=[common], help="check a branching claim file")
    s.add_argument("file")

    s = sub.add_parser("sectors", parents=[common], help="sector tables and fusion")
    s.add_argument("--minimal", type=int)
    s.add_argument("--algebra")
    s.add_argument("--level", type=int)
    s.add_argument("--fuse", nargs=2, metavar="LABEL")

    s = sub.add_parser("mu-index", parents=[common], help="sum of squared dimensions")
    s.add_argument("--dims", required=True)

    s = sub.add_parser("coupling-solve", parents=[common], help="coupling matrix from a branching table")
    s.add_argument("file")

    s = sub.add_parser("sharp-test", parents=[common], help="half-integrality of conformal energies")
    s.add_argument("--h", required=True)
    return p


def parse_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    cmd = args.subcommand
    cap, default = GRADE_LIMITS.get(cmd, (None, DEFAULT_GRADE))
    grade = args.grade if args.grade is not None else default
    if grade < 0:
        raise UsageError("--grade must be non-negative")
    if cap is not None and grade > cap:
        raise UsageError(f"--grade {grade} exceeds the {cmd} cap of {cap}")
    if cmd == "mode-verify":
        if not 1 <= args.modes <= 4:
            raise UsageError("--modes must be between 1 and 4")
        if not 0 <= args.bound_grade <= modealg.AFFINE_CAP:
            raise UsageError(f"--bound-grade must be at most {modealg.AFFINE_CAP}")
        if any(k < 1 for k in args.level):
            raise UsageError("levels must be positive")
        if args.phi and any(not 1 <= n <= 3 for n in args.phi):
            raise UsageError("--phi accepts n in 1..3")
    for name in ("file",):
        path = getattr(args, name, None)
        if path is not None and not os.path.isfile(path):
            raise UsageError(f"cannot read {path}")
    if args.tolerance is not None and not args.tolerance > 0:
        raise UsageError("--tolerance must be positive")
    color = os.environ.get("COSETKIT_COLOR", "0") == "1"
    return RunConfig(cmd, args, grade, args.format, args.tolerance, args.out, color)


def run(cfg: RunConfig) -> int:
    out = Output(cfg)
    try:
        code = COMMANDS[cfg.subcommand](cfg, out)
    except conformal.InconsistencyError as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    text = out.render()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except UsageError as exc:
        print(f"coset-kit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (specfiles.ParseError, liealg.LieDataError, modealg.TruncationError) as exc:
        print(f"coset-kit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
