"""Command-line interface.

Every command writes tab-separated lines to stdout.  Exit status is 0 on
success, 1 when an input fails validation (or a fuzz run sees a value
change), and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import documents as docs
from .cocycle import (GroupCochain, PartialCocycle, check_group_cocycle, check_partial_cocycle,
                      d3_eight_term_check, pullback, validate_cochain)
from .coloring import ALL, FOREST_IDENTITY, count_colorings, counting_invariant, normalization
from .complex import StratifiedComplex, direct_triangulation, strata_counts, validate_flag_like
from .errors import DwDefectError
from .examples import (COCHAIN_NAMES, EXAMPLE_NAMES, PARCEL_NAMES, gen_example, named_cochain,
                       named_parcel)
from .moves import BULK_PACHNER, EXTENDED_DEFECT, fuzz_invariance
from .parcel import Gamma2Parcel, validate_parcel
from .statesum import twisted_state_sum


class Failure(Exception):
    """Validation failure: lines already emitted, exit with status 1."""


class UsageError(Exception):
    pass


class _Run:
    def __init__(self):
        self.lines: list[str] = []
        self.inputs: dict[str, str] = {}

    def out(self, line: str) -> None:
        self.lines.append(line)

    def read(self, role: str, path: str):
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise UsageError(f"cannot read {path}: {e.strerror}") from None
        self.inputs[role] = docs.digest(text)
        return docs.parse(text)


def _load_complex(run: _Run, path: str):
    c = run.read("complex", path)
    if not isinstance(c, StratifiedComplex):
        raise UsageError(f"{path} is not a complex document")
    return c


def _load_parcel(run: _Run, path: str):
    p = run.read("parcel", path)
    if not isinstance(p, Gamma2Parcel):
        raise UsageError(f"{path} is not a parcel document")
    rep = validate_parcel(p)
    if not rep.ok:
        for line in rep.lines():
            run.out("parcel\t" + line)
        raise Failure()
    return p


def _load_cocycle(run: _Run, path: str, p) -> tuple[PartialCocycle, GroupCochain | None]:
    c = run.read("cocycle", path)
    if isinstance(c, GroupCochain):
        validate_cochain(c)
        if p.glabel is None or not c.qmap.is_homomorphism(p.glabel.gbeta, p.glabel.gdelta):
            run.out("cocycle\tquotient map is not a homomorphism from the parcel's labelling group")
            raise Failure()
        return pullback(c, p), c
    if isinstance(c, PartialCocycle):
        return c, None
    raise UsageError(f"{path} is not a cochain document")


def cmd_validate(run: _Run, a) -> None:
    c = _load_complex(run, a.complex)
    rep = validate_flag_like(c)
    for line in rep.lines():
        run.out(line)
    direct_triangulation(c)
    if not rep.ok:
        raise Failure()
    sb, sd, _, _ = strata_counts(c)
    run.out("directed\tpass")
    run.out(f"summary\td={c.d}\tvertices={c.n_vertices}\ttop={len(c.top)}\tchi={c.euler_characteristic()}"
            f"\tbulk_components={sb}\tdefect_components={sd}\tdefect_facets={len(c.defect)}")


def cmd_color_count(run: _Run, a) -> None:
    c = _load_complex(run, a.complex)
    p = _load_parcel(run, a.parcel)
    t = direct_triangulation(c)
    mode = FOREST_IDENTITY if a.forest_identity else ALL
    run.out(f"colorings\t{mode}\t{count_colorings(t, p, mode)}")


def cmd_invariant(run: _Run, a) -> None:
    c = _load_complex(run, a.complex)
    p = _load_parcel(run, a.parcel)
    t = direct_triangulation(c)
    eb, ed = normalization(t, p)
    total = count_colorings(t, p, ALL)
    run.out(f"colorings\tall\t{total}")
    run.out(f"normalization\t|B|^{eb}*|D|^{ed}\t{len(p.B) ** eb * len(p.D) ** ed}")
    run.out(f"invariant\t{counting_invariant(t, p)}")


def _cocycle_gate(run: _Run, alpha, p, allow: bool) -> None:
    rep = check_partial_cocycle(alpha, p)
    for line in rep.lines():
        run.out("cocycle\t" + line)
    if not rep.ok and not allow:
        raise Failure()


def cmd_statesum(run: _Run, a) -> None:
    c = _load_complex(run, a.complex)
    p = _load_parcel(run, a.parcel)
    alpha, _ = _load_cocycle(run, a.cocycle, p)
    t = direct_triangulation(c)
    _cocycle_gate(run, alpha, p, a.allow_non_cocycle)
    z = twisted_state_sum(t, p, alpha)
    m, coeffs, den = z.canonical()
    run.out(f"m\t{z.value.m}")
    run.out("sum\t[" + ",".join(map(str, z.value.coeffs)) + "]")
    run.out(f"prefactor\t|B|^-{z.eb}*|D|^-{z.ed}")
    run.out("value\t[" + ",".join(map(str, coeffs)) + f"]/{den}")
    v = z.to_complex()
    run.out(f"approx\t{v.real:.12g}\t{v.imag:.12g}")


def cmd_check_parcel(run: _Run, a) -> None:
    p = run.read("parcel", a.parcel)
    if not isinstance(p, Gamma2Parcel):
        raise UsageError(f"{a.parcel} is not a parcel document")
    rep = validate_parcel(p)
    for line in rep.lines():
        run.out(line)
    if not rep.ok:
        raise Failure()


def cmd_check_cocycle(run: _Run, a) -> None:
    p = _load_parcel(run, a.parcel)
    alpha, group = _load_cocycle(run, a.cocycle, p)
    if group is not None:
        g_ok = check_group_cocycle(group)
        run.out(f"group_cocycle\t{'pass' if g_ok else 'FAIL'}")
    rep = check_partial_cocycle(alpha, p)
    for line in rep.lines():
        run.out(line)
    ok = rep.ok
    if a.d3_cross_check:
        if alpha.d != 3:
            raise UsageError("--d3-cross-check needs a 3-cochain")
        e8 = d3_eight_term_check(alpha, p)
        agree = e8 == rep.condition2
        run.out(f"eight_term\t{'pass' if e8 else 'FAIL'}")
        run.out(f"cross_check\t{'agree' if agree else 'DISAGREE'}")
        ok = ok and agree
    if not ok:
        raise Failure()


def cmd_moves_fuzz(run: _Run, a) -> None:
    c = _load_complex(run, a.complex)
    p = _load_parcel(run, a.parcel)
    alpha = None
    if a.cocycle:
        alpha, _ = _load_cocycle(run, a.cocycle, p)
        _cocycle_gate(run, alpha, p, a.allow_non_cocycle)
    t = direct_triangulation(c)
    fams = {"bulk": (BULK_PACHNER,), "extended": (EXTENDED_DEFECT,),
            "mixed": (BULK_PACHNER, EXTENDED_DEFECT)}[a.families]
    rep = fuzz_invariance(t, p, alpha, a.seed, a.steps, families=fams,
                          max_vertices=a.max_vertices, require_cocycle=False)
    for line in rep.lines():
        run.out(line)
    if a.figure:
        from .report import fuzz_figure

        fuzz_figure(rep, a.figure, Path(a.complex).stem)
        run.out(f"# figure {a.figure}")
    if not rep.ok:
        raise Failure()


def cmd_gen_example(run: _Run, a) -> None:
    run.out(docs.render(gen_example(a.name)).rstrip("\n"))


def cmd_gen_parcel(run: _Run, a) -> None:
    run.out(docs.render(named_parcel(a.name)).rstrip("\n"))


def cmd_gen_cochain(run: _Run, a) -> None:
    run.out(docs.render(named_cochain(a.name, a.parcel)).rstrip("\n"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dwdefect", description="Counting invariants and state sums of "
                                 "triangulated manifolds with a codimension-one defect.")
    ap.add_argument("--record", metavar="PATH", help="also write a run record document")
    ap.add_argument("-o", "--output", metavar="PATH", help="write stdout lines to a file instead")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a complex is flag-like and can be directed")
    s.add_argument("complex")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("color-count", help="count colorings")
    s.add_argument("complex")
    s.add_argument("parcel")
    s.add_argument("--forest-identity", action="store_true", help="gauge-fix a spanning forest to identities")
    s.set_defaults(fn=cmd_color_count)

    s = sub.add_parser("invariant", help="the counting invariant")
    s.add_argument("complex")
    s.add_argument("parcel")
    s.set_defaults(fn=cmd_invariant)

    s = sub.add_parser("statesum", help="the twisted state sum")
    s.add_argument("complex")
    s.add_argument("parcel")
    s.add_argument("cocycle")
    s.add_argument("--allow-non-cocycle", action="store_true")
    s.set_defaults(fn=cmd_statesum)

    s = sub.add_parser("check-parcel", help="validate a parcel document")
    s.add_argument("parcel")
    s.set_defaults(fn=cmd_check_parcel)

    s = sub.add_parser("check-cocycle", help="check the partial-cocycle conditions")
    s.add_argument("parcel")
    s.add_argument("cocycle")
    s.add_argument("--d3-cross-check", action="store_true")
    s.set_defaults(fn=cmd_check_cocycle)

    s = sub.add_parser("moves-fuzz", help="random moves; values must stay constant")
    s.add_argument("complex")
    s.add_argument("parcel")
    s.add_argument("cocycle", nargs="?")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--families", choices=("bulk", "extended", "mixed"), default="mixed")
    s.add_argument("--max-vertices", type=int)
    s.add_argument("--allow-non-cocycle", action="store_true")
    s.add_argument("--figure", metavar="PNG", help="render a figure of the run")
    s.set_defaults(fn=cmd_moves_fuzz)

    s = sub.add_parser("gen-example", help="print a named example complex")
    s.add_argument("name", choices=EXAMPLE_NAMES)
    s.set_defaults(fn=cmd_gen_example)

    s = sub.add_parser("gen-parcel", help="print a named group parcel")
    s.add_argument("name", choices=PARCEL_NAMES)
    s.set_defaults(fn=cmd_gen_parcel)

    s = sub.add_parser("gen-cochain", help="print a named group cochain for a named parcel")
    s.add_argument("name", choices=COCHAIN_NAMES)
    s.add_argument("--parcel", choices=PARCEL_NAMES, default="trivial")
    s.set_defaults(fn=cmd_gen_cochain)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    run = _Run()
    code = 0
    try:
        a.fn(run, a)
    except Failure:
        code = 1
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DwDefectError as e:
        run.out(f"error\t{e.code}\t{e}")
        code = 1
    text = "".join(line + "\n" for line in run.lines)
    if a.output:
        Path(a.output).write_text(text)
    else:
        sys.stdout.write(text)
    if a.record:
        args = {k: v for k, v in sorted(vars(a).items()) if k not in ("fn", "record", "output")}
        rec = docs.RunRecord(a.command, args, run.inputs, run.lines, code)
        Path(a.record).write_text(docs.render(rec))
    return code


if __name__ == "__main__":
    sys.exit(main())
