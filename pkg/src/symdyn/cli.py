"""Command-line front end.

Exit codes: 0 success or proven, 1 refuted or false, 2 unknown,
3 usage error, 4 input error.  Errors go to stderr as JSON objects.
"""

import argparse
import json
import os
import re
import sys

import numpy as np

from . import examples as builtin
from .errors import InputError, SymDynError
from .io import dumps, load_subshift, read_json, subshift_to_json
from .language import (Alphabet, Verdict, admissible_words, follower_set, higher_block,
                       is_admissible, is_irreducible, is_nontrivial, predecessor_set)
from .lgs import (build_minimal_lgs, check_compatibility, check_condition_I, check_left_resolving,
                  check_predecessor_separated, presented_words, projection_expansion,
                  transition_matrices)
from .orbit import (CoeData, CylinderPotential, EventuallyPeriodicPoint, GroupoidElement,
                    SlidingBlockCode, apply_code, compose_potential, ergodic_sum, find_conjugacy,
                    forcing_check, groupoid_cocycle, point_admissible, psi_transform, random_point,
                    shift_point, verify_coe_data, verify_conjugacy, verify_eventual_conjugacy)
from .sofic import (cover_is_valid, export_ck_relations, factor_map_apply, fischer_cover,
                    hat_matrix)
from .sync import (is_l_synchronizing, is_lambda_synchronizing, past_equivalence_classes,
                   synchronizing_words)

EXIT = {Verdict.PROVEN: 0, Verdict.REFUTED: 1, Verdict.UNKNOWN: 2}


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------

_POINT = re.compile(r"^(.*)\((.+)\)$")


def parse_point(text, alphabet):
    """``u(v)`` denotes ``u v v v ...``; words use the alphabet's text form."""
    m = _POINT.match(text.strip())
    if not m:
        raise InputError(f"point {text!r} must look like PREFIX(CYCLE)")
    u, v = m.group(1), m.group(2)
    if not alphabet.compact:
        u = u.rstrip(".")
    return EventuallyPeriodicPoint(alphabet.parse(u), alphabet.parse(v))


def parse_word(S, text):
    return S.check_word(S.alphabet.parse(text))


def potential_from_json(doc, S):
    if isinstance(doc, dict) and set(doc) == {"constant"}:
        return CylinderPotential.constant(S, int(doc["constant"]))
    if isinstance(doc, dict) and set(doc) == {"indicator"}:
        return CylinderPotential.indicator(S, S.alphabet.parse(doc["indicator"]))
    f = CylinderPotential.from_json(doc, S.alphabet)
    missing = [w for w in admissible_words(S, f.depth) if w not in f.table]
    if missing:
        raise InputError(f"potential undefined on cylinder {S.alphabet.format(missing[0])}")
    return f


def coe_from_json(doc, S1, S2):
    if not isinstance(doc, dict) or "h" not in doc:
        raise InputError("cocycle data needs 'h'")
    extra = sorted(set(doc) - {"h", "h_inv", "k1", "l1", "k2", "l2"})
    if extra:
        raise InputError(f"unknown keys in cocycle data: {extra}")
    h = SlidingBlockCode.from_json(doc["h"], S1.alphabet, S2.alphabet)
    h_inv = (SlidingBlockCode.from_json(doc["h_inv"], S2.alphabet, S1.alphabet)
             if "h_inv" in doc else None)
    try:
        k1, l1 = potential_from_json(doc["k1"], S1), potential_from_json(doc["l1"], S1)
    except KeyError:
        raise InputError("cocycle data needs 'k1' and 'l1'") from None
    k2 = potential_from_json(doc["k2"], S2) if "k2" in doc else None
    l2 = potential_from_json(doc["l2"], S2) if "l2" in doc else None
    return CoeData(h, k1, l1, k2, l2, h_inv)


def samples_from_args(args, S):
    pts = [parse_point(p, S.alphabet) for p in args.point or []]
    for p in pts:
        if not point_admissible(S, p):
            raise InputError(f"sample {p.format(S.alphabet)} is not admissible")
    if args.samples or not pts:
        rng = np.random.default_rng(args.seed)
        pts += [random_point(S, rng) for _ in range(args.samples or 20)]
    return pts


# --------------------------------------------------------------------------
# subcommands; each returns (document, exit code)
# --------------------------------------------------------------------------

def cmd_words(args):
    S = load_subshift(args.file)
    words = admissible_words(S, args.k)
    return {"k": args.k, "count": len(words), "words": [S.alphabet.format(w) for w in words]}, 0


def cmd_info(args):
    S = load_subshift(args.file)
    doc = {"kind": S.kind, "alphabet": list(S.alphabet.symbols),
           "irreducible": str(is_irreducible(S, args.depth))}
    if S.kind != "oracle":
        doc["nontrivial"] = is_nontrivial(S)
    if args.word is not None:
        doc["word"] = args.word
        doc["admissible"] = is_admissible(S, parse_word(S, args.word))
    return doc, 0


def cmd_higher_block(args):
    return subshift_to_json(higher_block(load_subshift(args.file), args.n)), 0


def cmd_gamma(args):
    S = load_subshift(args.file)
    mu = parse_word(S, args.word)
    doc = {"word": args.word, "l": args.l}
    if args.side in ("minus", "both"):
        doc["predecessors"] = [S.alphabet.format(w) for w in predecessor_set(S, mu, args.l)]
    if args.side in ("plus", "both"):
        doc["followers"] = [S.alphabet.format(w) for w in follower_set(S, mu, args.l)]
    return doc, 0


def cmd_sync(args):
    S = load_subshift(args.file)
    if args.lambda_:
        v = is_lambda_synchronizing(S, args.depth)
        return {"check": "lambda-synchronizing", **v.to_json(S.alphabet)}, EXIT[v.status]
    if args.word is not None:
        v = is_l_synchronizing(S, parse_word(S, args.word), args.l, args.depth)
        return {"check": "l-synchronizing", "word": args.word, **v.to_json(S.alphabet)}, EXIT[v.status]
    if args.max_len is None:
        raise UsageError("sync needs --word, --max-len or --lambda")
    res = synchronizing_words(S, args.l, args.max_len, args.depth)
    fmt = S.alphabet.format
    doc = {"l": args.l, "max_len": args.max_len, "proven": [fmt(w) for w in res.proven],
           "unknown": [fmt(w) for w in res.unknown]}
    return doc, 2 if res.unknown else 0


def cmd_classes(args):
    S = load_subshift(args.file)
    fmt = S.alphabet.format
    classes = past_equivalence_classes(S, args.l, args.max_len)
    return [{"level": c.level, "representative": fmt(c.representative),
             "signature": [fmt(w) for w in c.signature],
             "members": [fmt(w) for w in c.members]} for c in classes], 0


def cmd_lgs(args):
    S = load_subshift(args.file)
    G = build_minimal_lgs(S, args.level, args.depth)
    T = transition_matrices(G)
    cond = check_condition_I(G, args.horizon) if args.horizon <= args.level else None
    preds = {
        "left_resolving": check_left_resolving(G),
        "predecessor_separated": check_predecessor_separated(G),
        "compatibility": check_compatibility(T),
        "roundtrip": all(presented_words(G, k) == admissible_words(S, k)
                         for k in range(args.level + 1)),
    }
    doc = {"system": G.to_json(), "normality": str(G.normality), "predicates": dict(preds)}
    if cond is not None:
        doc["predicates"]["condition_I"] = {"verdict": str(cond.verdict),
                                            "certified_levels": list(cond.certified_levels),
                                            "witness": cond.witness}
    if args.matrices:
        doc["matrices"] = T.to_json()
    if args.expand:
        try:
            l, i = (int(x) for x in args.expand.split(":"))
        except ValueError:
            raise UsageError("--expand takes LEVEL:INDEX") from None
        ex = projection_expansion(G, l, i)
        doc["expansion"] = {"level": l, "vertex": G.levels[l][i].id,
                            "factors": [[S.alphabet.format(w), s] for w, s in ex.factors]}
    code = 0 if all(preds.values()) else 1
    if code == 0 and cond is not None:
        code = EXIT[cond.verdict]
    return doc, code


def cmd_fischer(args):
    F = fischer_cover(load_subshift(args.file))
    return {**F.to_json(), "valid": cover_is_valid(F)}, 0


def cmd_ahat(args):
    F = fischer_cover(load_subshift(args.file))
    H = hat_matrix(F)
    doc = H.to_json(F)
    if args.point:
        names = Alphabet(tuple(f"{F.alphabet.symbols[a]}:{F.vertices[i]}"
                               for a, i in H.alphabet_hat))
        x = factor_map_apply(F, parse_point(args.point, names))
        doc["image"] = x.format(F.alphabet)
    return doc, 0


def cmd_relations(args):
    return export_ck_relations(fischer_cover(load_subshift(args.file))), 0


def cmd_cocycle(args):
    S = load_subshift(args.file)
    f = potential_from_json(read_json(args.potential), S)
    x = parse_point(args.point, S.alphabet)
    if not point_admissible(S, x):
        raise InputError("point is not admissible")
    doc = {"point": x.format(S.alphabet)}
    if args.n is not None:
        doc["n"] = args.n
        doc["ergodic_sum"] = ergodic_sum(f, x, args.n)
    if args.z is not None:
        z = parse_point(args.z, S.alphabet)
        g = GroupoidElement(x, z, args.p, args.q)
        doc["groupoid"] = {"z": z.format(S.alphabet), "p": args.p, "q": args.q,
                           "lag": g.lag, "value": groupoid_cocycle(f, g)}
    if len(doc) == 1:
        raise UsageError("cocycle needs --n or --z/--p/--q")
    return doc, 0


def cmd_point(args):
    S = load_subshift(args.file)
    x = parse_point(args.point, S.alphabet)
    doc = {"point": x.format(S.alphabet), "admissible": point_admissible(S, x),
           "shift": shift_point(x).format(S.alphabet)}
    if args.code:
        if not args.target:
            raise UsageError("--code needs --target")
        T = load_subshift(args.target)
        h = SlidingBlockCode.from_json(read_json(args.code), S.alphabet, T.alphabet)
        doc["image"] = apply_code(h, x).format(T.alphabet)
    return doc, 0 if doc["admissible"] else 1


def _pair(args):
    return load_subshift(args.source), load_subshift(args.target)


def cmd_psi(args):
    S1, S2 = _pair(args)
    D = coe_from_json(read_json(args.data), S1, S2)
    f = potential_from_json(read_json(args.potential), S2)
    P = psi_transform(D, f, S1, args.cap)
    doc = P.to_json(S1.alphabet)
    doc["equals_f_circ_h"] = P.agrees_with(compose_potential(f, D.h, S1), S1)
    return doc, 0


def _report(report, S1):
    return {"passed": report.passed, "checks": report.to_json(S1.alphabet)}, 0 if report.passed else 1


def cmd_verify_coe(args):
    S1, S2 = _pair(args)
    D = coe_from_json(read_json(args.data), S1, S2)
    return _report(verify_coe_data(D, S1, S2, samples_from_args(args, S1)), S1)


def cmd_verify_eventual(args):
    S1, S2 = _pair(args)
    h = SlidingBlockCode.from_json(read_json(args.code), S1.alphabet, S2.alphabet)
    h_inv = (SlidingBlockCode.from_json(read_json(args.inverse), S2.alphabet, S1.alphabet)
             if args.inverse else None)
    report = verify_eventual_conjugacy(h, args.K, S1, S2, samples_from_args(args, S1), h_inv)
    return _report(report, S1)


def cmd_force(args):
    S1, S2 = _pair(args)
    D = coe_from_json(read_json(args.data), S1, S2)
    rep = forcing_check(D, S1, S2, samples_from_args(args, S1), args.depth)
    code = {"conjugacy-forced": 0, "not-forced": 1, "inconclusive": 2}[rep.verdict]
    return rep.to_json(S1.alphabet, S2.alphabet), code


def cmd_find_conj(args):
    S1, S2 = _pair(args)
    if args.code:
        h = SlidingBlockCode.from_json(read_json(args.code), S1.alphabet, S2.alphabet)
        res = verify_conjugacy(h, S1, S2)
        return {"conjugacy": res.ok, "reason": res.reason}, 0 if res.ok else 1
    res = find_conjugacy(S1, S2, args.max_anticipation, args.cap)
    doc = {"found": res.code is not None, "anticipation": res.anticipation, "tried": res.tried,
           "obstructions": list(res.obstructions),
           "code": None if res.code is None else res.code.to_json(S1.alphabet, S2.alphabet)}
    return doc, 0 if res.code is not None else 1


def cmd_examples(args):
    names = [args.name] if args.name else sorted(builtin.BUILTINS)
    for n in names:
        if n not in builtin.BUILTINS:
            raise InputError(f"unknown example {n!r}; choose from {sorted(builtin.BUILTINS)}")
    docs = {n: subshift_to_json(builtin.BUILTINS[n]()) for n in names}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for n, d in docs.items():
            with open(os.path.join(args.out, f"{n}.json"), "w", encoding="utf-8") as fh:
                fh.write(dumps(d))
        return {"written": [os.path.join(args.out, f"{n}.json") for n in names]}, 0
    return docs[names[0]] if args.name else docs, 0


# --------------------------------------------------------------------------
# argument parser
# --------------------------------------------------------------------------

def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _positive(text):
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser():
    def output_options(parser, default):
        parser.add_argument("--format", choices=["json", "text"], default=default("json"))
        parser.add_argument("--color", choices=["never", "auto", "always"],
                            default=default("never"),
                            help="accepted for compatibility; output is never colored")

    p = Parser(prog="symdyn", description="Symbolic dynamics toolkit.")
    output_options(p, lambda d: d)
    common = Parser(add_help=False)
    # options may also follow the subcommand; suppress keeps the top-level value
    output_options(common, lambda d: argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, files=("file",)):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        for f in files:
            sp.add_argument(f, help="subshift JSON file, '-' for stdin")
        sp.set_defaults(func=func)
        return sp

    def samples(sp):
        sp.add_argument("--point", action="append", help="sample point PREFIX(CYCLE), repeatable")
        sp.add_argument("--samples", type=_nonneg, default=0, help="number of random samples")
        sp.add_argument("--seed", type=_nonneg, default=0)

    sp = add("words", cmd_words, "admissible words of length k")
    sp.add_argument("--k", type=_nonneg, required=True)

    sp = add("info", cmd_info, "irreducibility, nontriviality, admissibility")
    sp.add_argument("--depth", type=_positive, default=4)
    sp.add_argument("--word")

    sp = add("higher-block", cmd_higher_block, "n-block recoding of an SFT")
    sp.add_argument("--n", type=_positive, required=True)

    sp = add("gamma", cmd_gamma, "predecessor and follower sets")
    sp.add_argument("--word", required=True)
    sp.add_argument("--l", type=_nonneg, required=True)
    sp.add_argument("--side", choices=["minus", "plus", "both"], default="both")

    sp = add("sync", cmd_sync, "synchronization verdicts")
    sp.add_argument("--l", type=_nonneg, default=1)
    sp.add_argument("--word")
    sp.add_argument("--max-len", type=_positive)
    sp.add_argument("--lambda", dest="lambda_", action="store_true")
    sp.add_argument("--depth", type=_nonneg, default=4)

    sp = add("classes", cmd_classes, "l-past equivalence classes")
    sp.add_argument("--l", type=_nonneg, required=True)
    sp.add_argument("--max-len", type=_positive)

    sp = add("lgs", cmd_lgs, "minimal lambda-graph system with predicates")
    sp.add_argument("--level", type=_nonneg, default=8)
    sp.add_argument("--depth", type=_nonneg, default=4)
    sp.add_argument("--horizon", type=_positive, default=3)
    sp.add_argument("--matrices", action="store_true")
    sp.add_argument("--expand", metavar="LEVEL:INDEX")

    add("fischer", cmd_fischer, "left Fischer cover")
    sp = add("ahat", cmd_ahat, "hat alphabet and matrix of the Fischer cover")
    sp.add_argument("--point", help="point over hat symbols SYMBOL:VERTEX joined by '.'")
    add("relations", cmd_relations, "Cuntz-Krieger generators and relations")

    sp = add("cocycle", cmd_cocycle, "ergodic sums and groupoid cocycle values")
    sp.add_argument("--potential", required=True)
    sp.add_argument("--point", required=True)
    sp.add_argument("--n", type=_nonneg)
    sp.add_argument("--z")
    sp.add_argument("--p", type=_nonneg, default=0)
    sp.add_argument("--q", type=_nonneg, default=0)

    sp = add("point", cmd_point, "shift, admissibility and code image of a point")
    sp.add_argument("--point", required=True)
    sp.add_argument("--code")
    sp.add_argument("--target")

    pair = ("source", "target")
    sp = add("psi", cmd_psi, "tabulate the Psi transform", pair)
    sp.add_argument("--data", required=True)
    sp.add_argument("--potential", required=True)
    sp.add_argument("--cap", type=_positive, default=16)

    sp = add("verify-coe", cmd_verify_coe, "check cocycle equations on samples", pair)
    sp.add_argument("--data", required=True)
    samples(sp)

    sp = add("verify-eventual", cmd_verify_eventual, "check eventual conjugacy identities", pair)
    sp.add_argument("--code", required=True)
    sp.add_argument("--inverse")
    sp.add_argument("--K", type=_nonneg, required=True)
    samples(sp)

    sp = add("force", cmd_force, "forcing check on samples", pair)
    sp.add_argument("--data", required=True)
    sp.add_argument("--depth", type=_positive, default=2)
    samples(sp)

    sp = add("find-conj", cmd_find_conj, "search for or verify a conjugacy", pair)
    sp.add_argument("--max-anticipation", type=_nonneg, default=2)
    sp.add_argument("--cap", type=_positive, default=1 << 20)
    sp.add_argument("--code", help="verify this code instead of searching")

    sp = sub.add_parser("examples", help="emit built-in example subshifts", parents=[common])
    sp.add_argument("--name")
    sp.add_argument("--out", help="directory to write NAME.json files into")
    sp.set_defaults(func=cmd_examples)
    return p


def _flat(v):
    if isinstance(v, dict):
        return not v
    if isinstance(v, list):
        # one line only when items stay distinguishable
        return not any(isinstance(e, (dict, list)) or " " in str(e) for e in v)
    return True


def render_text(doc, indent=0):
    """Indented plain-text view of a JSON document; flat lists share one line."""
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if _flat(v):
                lines.append(f"{pad}{k}: {_scalar(v)}".rstrip())
            else:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
    elif isinstance(doc, list):
        for e in doc:
            if _flat(e):
                lines.append(f"{pad}- {_scalar(e)}")
            else:
                lines.append(f"{pad}-")
                lines.append(render_text(e, indent + 1))
    else:
        lines.append(f"{pad}{_scalar(doc)}")
    return "\n".join(lines)


def _scalar(v):
    if isinstance(v, list):
        return " ".join(_scalar(e) for e in v)
    if isinstance(v, dict):
        return json.dumps(v, ensure_ascii=False)
    if v is None:
        return "-"
    return str(v)


def _fail(kind, message, code):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        doc, code = args.func(args)
    except UsageError as exc:
        return _fail("UsageError", str(exc), 3)
    except SymDynError as exc:
        return _fail(type(exc).__name__, str(exc), 4)
    out = dumps(doc) if args.format == "json" else render_text(doc) + "\n"
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
