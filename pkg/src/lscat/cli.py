"""Command-line front end.

Verbs: cat, detect, ganea, homology, ring, cuplength, pi1, degree1, check,
gen.  Inputs are connected-sum expressions or DCX files (picked by the
--format flag, a .dcx suffix, or an existing path).  Exit codes: 0 success,
1 usage error, 2 computation error, 3 certificate-check failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import category_engine as ce
from . import cohomology_ring as ring
from . import delta_complex as dc
from . import exact_algebra as ea
from . import manifold_algebra as ma
from . import pi1 as pi1mod
from .errors import LscatError, ParseError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_CHECK = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


_GRAMMAR = (
    'expr := term { "#" term };  term := S3 | S1xS2 | S1~S2 | T3 | RP2xS1 | '
    "RP3 | L(p,q) | Poinc | Q8"
)


def _build_parser():
    p = _Parser(prog="lscat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb")

    def add(verb, help_, inputs=1, coeffs_default=2):
        sp = sub.add_parser(verb, help=help_)
        for i in range(inputs):
            sp.add_argument("input" if inputs == 1 else "input%d" % (i + 1))
        sp.add_argument("--coeffs", type=int, default=coeffs_default,
                        help="coefficient modulus (default %d; 0 is integral)"
                        % coeffs_default)
        sp.add_argument("--n", type=int, default=1,
                        help="sphere dimension for ganea")
        sp.add_argument("--cert", action="store_true",
                        help="print the full certificate")
        sp.add_argument("--verify", action="store_true",
                        help="re-check the certificate before exiting")
        sp.add_argument("--format", choices=["expr", "dcx"], default=None,
                        help="force the input interpretation")
        sp.add_argument("--jobs", type=int, default=1,
                        help="parallel premise re-verification")
        sp.add_argument("-o", "--output", default=None,
                        help="write output to a file instead of stdout")
        return sp

    add("cat", "category of a manifold expression or triangulation")
    add("detect", "detecting-element verdict")
    add("ganea", "category of the product with a sphere")
    add("homology", "homology groups", coeffs_default=0)
    add("ring", "cohomology ring table")
    add("cuplength", "cup-length and witness")
    add("pi1", "fundamental group presentation and class")
    add("degree1", "degree-one map consequences", inputs=2)
    add("check", "verify a serialized certificate")
    gen = sub.add_parser("gen", help="emit a triangulation in DCX format")
    gen.add_argument("input")
    gen.add_argument("-o", "--output", default=None)
    return p


def _is_dcx(arg, fmt):
    if fmt == "dcx":
        return True
    if fmt == "expr":
        return False
    return arg.endswith(".dcx") or os.path.isfile(arg)


def _load_complex(arg, fmt):
    if _is_dcx(arg, fmt):
        with open(arg, "r", encoding="utf-8") as fh:
            return dc.from_dcx(fh.read()), "dcx:%s" % arg
    expr = ma.parse_normal(arg)
    return ma.triangulate_expr(expr), "expr:%s" % expr.compact()


def _trace_lines(result):
    up = result.upper
    lo = result.lower
    names = {
        "DIM": "dimension bound cat <= %d" % up.bound,
        "PUSHOUT": "wedge pushout bound cat <= 2",
        "SPHERE": "homotopy sphere bound cat <= 1",
        "PRODUCT": "product inequality cat <= %d" % up.bound,
    }
    upper_line = "upper: %s" % names.get(up.rule, "%s <= %d" % (up.rule, up.bound))
    kinds = {
        "R1": "nonzero-class weight",
        "R2": "degree-one pullback",
        "R3": "cup-product additivity",
        "R4": "aspherical degree rule",
        "R5": "finite-group top-class rule",
        "COVER": "orientable double cover",
        "THEOREM": "certified fundamental-group class",
    }
    lower_line = "lower: %s gives cat >= %d" % (
        kinds.get(lo.rule, lo.rule), lo.bound
    )
    return [upper_line, lower_line]


def _print_detect(out, verdict):
    out.append("detect: %s" % verdict.status)
    for r in verdict.routes:
        out.append("  route %s: %s [%s]" % (r.ring_name, r.class_desc,
                                            r.premise))
    if verdict.reason:
        out.append("  reason: %s" % verdict.reason)
    if verdict.note:
        out.append("  note: %s" % verdict.note)


def _verify_and_report(result, out, jobs):
    nodes = []

    def collect(node):
        nodes.append(node)
        for c in node.children:
            collect(c)

    collect(result.upper)
    collect(result.lower)
    verified = [n for n in nodes if n.premise == ce.VERIFIED and n.claim]
    if jobs > 1 and verified:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            list(ex.map(lambda n: ce._verify_claim(n.claim), verified))
    report = ce.check_certificate(result)
    if report.ok:
        out.append("certificate: verified (%d premises recomputed, %d catalog facts)"
                   % (len(verified), len(report.catalog_facts)))
        return True
    out.append("certificate: FAILED")
    for f in report.failures:
        out.append("  " + f)
    return False


def _homology_lines(X, coeffs):
    H = ea.homology(X, coeffs)
    out = []
    for k in range(X.dim + 1):
        out.append("H_%d = %s" % (k, H.describe(k)))
    return out


def run(argv):
    """Dispatch one invocation; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write("usage error: %s\n%s\n" % (exc, _GRAMMAR))
        return EXIT_USAGE
    if args.verb is None:
        sys.stderr.write(parser.format_usage())
        return EXIT_USAGE
    out = []
    code = EXIT_OK
    try:
        code = _dispatch(args, out)
    except ParseError as exc:
        sys.stderr.write("parse error: %s\n%s\n" % (exc, _GRAMMAR))
        return EXIT_COMPUTE
    except LscatError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_COMPUTE
    except OSError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_COMPUTE
    text = "\n".join(out) + ("\n" if out else "")
    output = getattr(args, "output", None)
    if output and out:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif not output:
        sys.stdout.write(text)
    return code


def _result_for_input(args):
    if _is_dcx(args.input, args.format):
        X, ref = _load_complex(args.input, args.format)
        return ce.ls_category_complex(X, ref)
    return ce.ls_category(args.input)


def _dispatch(args, out):
    verb = args.verb
    if verb == "cat":
        result = _result_for_input(args)
        if result.value is not None:
            out.append("cat = %d" % result.value)
        else:
            out.append("cat in [%d, %d]" % (result.lo, result.hi))
        out.extend(_trace_lines(result))
        if args.cert:
            out.append(ce.cert_to_text(result).rstrip("\n"))
        if args.verify:
            if not _verify_and_report(result, out, args.jobs):
                return EXIT_CHECK
        return EXIT_OK
    if verb == "detect":
        verdict = ce.detectability(args.input)
        _print_detect(out, verdict)
        return EXIT_OK
    if verb == "ganea":
        result = ce.verify_ganea(args.input, args.n)
        out.append("cat(M x S^%d) = %d" % (args.n, result.value))
        out.extend(_trace_lines(result))
        if args.cert:
            out.append(ce.cert_to_text(result).rstrip("\n"))
        if args.verify:
            if not _verify_and_report(result, out, args.jobs):
                return EXIT_CHECK
        return EXIT_OK
    if verb == "homology":
        X, _ = _load_complex(args.input, args.format)
        out.extend(_homology_lines(X, args.coeffs))
        return EXIT_OK
    if verb == "ring":
        X, _ = _load_complex(args.input, args.format)
        R = ring.ring_table_cached(X, args.coeffs)
        out.extend(_ring_lines(R))
        return EXIT_OK
    if verb == "cuplength":
        X, _ = _load_complex(args.input, args.format)
        R = ring.ring_table_cached(X, args.coeffs)
        length, witness = ring.cup_length(R)
        out.append("cl = %d" % length)
        if witness is not None:
            out.append(
                "witness: %s (degrees %s)"
                % (" . ".join(R.labels[d][i] for d, i in witness.factors),
                   "+".join(str(d) for d, _ in witness.factors))
            )
        return EXIT_OK
    if verb == "pi1":
        return _pi1_verb(args, out)
    if verb == "degree1":
        verdict = ce.degree_one_consequences(args.input1, args.input2)
        out.append("consistent" if verdict.consistent else "no-degree-one-map")
        out.append(verdict.reason)
        for c in verdict.cites:
            out.append("cites: %s" % c)
        return EXIT_OK
    if verb == "check":
        with open(args.input, "r", encoding="utf-8") as fh:
            result = ce.cert_from_text(fh.read())
        if _verify_and_report(result, out, args.jobs):
            return EXIT_OK
        return EXIT_CHECK
    if verb == "gen":
        expr = ma.parse_normal(args.input)
        X = ma.triangulate_expr(expr)
        text = dc.to_dcx(X)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    raise _UsageError("unknown verb %r" % verb)


def _ring_lines(R):
    out = []
    out.append("ring over Z/%d, top degree %d" % (R.m, R.top_degree))
    out.append("basis: " + "; ".join(
        "deg %d: %s" % (k, " ".join(R.labels[k]) or "-")
        for k in range(R.top_degree + 1)
    ))
    for (d1, i, d2, j), coords in sorted(R.products.items()):
        if d1 > d2:
            continue
        target = R.labels[d1 + d2]
        terms = [
            ("%s" % target[t]) if c == 1 else "%d*%s" % (c, target[t])
            for t, c in enumerate(coords) if c
        ]
        out.append(
            "%s . %s = %s"
            % (R.labels[d1][i], R.labels[d2][j],
               " + ".join(terms) if terms else "0")
        )
    if R.pairing is not None:
        out.append("pairing: " + " ".join(
            "<%s,[M]>=%d" % (lab, v)
            for lab, v in zip(R.labels[R.top_degree], R.pairing)
        ))
    return out


def _pi1_verb(args, out):
    if _is_dcx(args.input, args.format):
        X, _ = _load_complex(args.input, args.format)
        pres = pi1mod.edge_path_presentation(X)
        simp = pi1mod.tietze_simplify(pres)
        cls = pi1mod.classify_complex(X)
        out.append("presentation: %s" % simp)
        out.append("class: %s" % cls)
        out.append("evidence: %s" % cls.evidence)
        return EXIT_OK
    expr = ma.parse_normal(args.input)
    f = ma.facts(expr)
    if f.triangulable:
        X = ma.triangulate_expr(expr)
        pres = pi1mod.edge_path_presentation(X)
        simp = pi1mod.tietze_simplify(pres)
        out.append("presentation: %s" % simp)
    out.append("class: %s" % f.pi1)
    out.append("evidence: %s" % f.pi1.evidence)
    return EXIT_OK


def main(argv=None):
    return run(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
