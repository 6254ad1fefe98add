"""Command-line frontend for tangle evaluation and classification.

Exit codes: 0 success, 1 usage problem, 2 tangle parse error, 3 degenerate
evaluation point, 4 internal invariant violation.  Output is JSON (default)
or CSV with floats printed to 12 significant digits, so identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from .connectomes import Connectome, classify as classify_connectome, \
    enumerate_connectomes, is_biseparable, reduce_connectome, representative_state
from .entanglement import entanglement_entropy, local_ranks, schmidt_rank, \
    slocc_tripartite_class, three_tangle
from .scalars import DegeneratePointError, EvalPoint, evaluate
from .skein import bracket
from .su2 import classify_hw_tripartite, highest_weight_vectors, hw_rank_table
from .tangle_dsl import TangleParseError, corpus_names, load_corpus, parse_tangle


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _g12(x):
    """Round a float to 12 significant digits for stable printing."""
    if x == 0:
        return 0.0
    return float(f"{float(x):.12g}")


def _c12(z):
    z = complex(z)
    return {"re": _g12(z.real), "im": _g12(z.imag)}


def _parse_theta(text):
    """Angle in radians, with an optional 'pi' suffix like 0.5pi or -pi/12."""
    s = str(text).strip().lower().replace(" ", "").replace("π", "pi")
    if s in ("pi", "+pi"):
        return math.pi
    if s == "-pi":
        return -math.pi
    if s.endswith("pi"):
        head = s[:-2].rstrip("*")
        if head in ("", "+"):
            return math.pi
        if head == "-":
            return -math.pi
        return float(head) * math.pi
    if "pi/" in s:
        sign = -1.0 if s.startswith("-") else 1.0
        den = float(s.split("pi/", 1)[1])
        return sign * math.pi / den
    return float(s)


def _eval_point(args):
    if getattr(args, "theta", None) is not None and getattr(args, "k", None) is not None:
        raise UsageError("give either --theta or --k, not both")
    if getattr(args, "theta", None) is not None:
        return EvalPoint(_parse_theta(args.theta))
    if getattr(args, "k", None) is not None:
        return EvalPoint.from_level(args.k)
    return EvalPoint.from_level(4)


def _load_document(source):
    if os.path.isfile(source):
        with open(source) as fh:
            return parse_tangle(fh.read())
    name = source[:-3] if source.endswith(".tl") else source
    try:
        return load_corpus(name)
    except KeyError:
        raise UsageError(
            f"no such file or shipped tangle: {source!r} "
            f"(shipped names: {', '.join(corpus_names())})")


def _state_of(doc):
    if not doc.parties:
        raise UsageError("this command needs a document with party declarations")
    return doc.state()


def _normalized_amplitudes(doc, point):
    amp = _state_of(doc).amplitudes(point)
    norm = np.linalg.norm(amp.ravel())
    if norm < 1e-14:
        raise UsageError("state evaluates to the zero tensor at this point")
    return amp / norm


def _require_three_qubits(doc):
    layout = _state_of(doc).layout
    if layout.dims != (2, 2, 2):
        raise UsageError("this command needs exactly three qubit parties")


def _emit(args, payload, csv_rows, csv_header):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        sys.stdout.write(buf.getvalue())


def _sorted_terms(element):
    return sorted(element.terms.items(), key=lambda kv: sorted(kv[0].pairs))


def _cmd_bracket(args):
    doc = _load_document(args.file)
    if not doc.word.is_closed():
        raise UsageError("bracket needs a closed document (top 0, bottom 0)")
    value = bracket(doc.word, doc.mode)
    if args.mode == "exact":
        payload = {"name": doc.name, "skein_mode": doc.mode, "value": str(value)}
        rows = [[str(value)]]
        return payload, rows, ["value"]
    point = _eval_point(args)
    z = complex(evaluate(value, point))
    payload = {"name": doc.name, "skein_mode": doc.mode,
               "theta": _g12(point.theta), "value": _c12(z)}
    return payload, [[_g12(z.real), _g12(z.imag)]], ["re", "im"]


def _cmd_reduce(args):
    doc = _load_document(args.file)
    element = doc.element()
    terms = []
    rows = []
    if args.mode == "exact":
        for dg, coeff in _sorted_terms(element):
            pairs = sorted(dg.pairs)
            terms.append({"pairs": [list(p) for p in pairs], "coeff": str(coeff)})
            rows.append([" ".join(f"{a}-{b}" for a, b in pairs), str(coeff)])
        payload = {"name": doc.name, "skein_mode": doc.mode,
                   "top": doc.top, "bottom": doc.bottom, "terms": terms}
        return payload, rows, ["pairs", "coeff"]
    point = _eval_point(args)
    for dg, coeff in _sorted_terms(element.evaluate(point)):
        pairs = sorted(dg.pairs)
        z = complex(coeff)
        terms.append({"pairs": [list(p) for p in pairs], "coeff": _c12(z)})
        rows.append([" ".join(f"{a}-{b}" for a, b in pairs),
                     _g12(z.real), _g12(z.imag)])
    payload = {"name": doc.name, "skein_mode": doc.mode, "top": doc.top,
               "bottom": doc.bottom, "theta": _g12(point.theta), "terms": terms}
    return payload, rows, ["pairs", "re", "im"]


def _cmd_state(args):
    doc = _load_document(args.file)
    point = _eval_point(args)
    state = _state_of(doc)
    amp = state.amplitudes(point)
    entries = []
    rows = []
    for idx in np.ndindex(*amp.shape):
        z = amp[idx]
        entries.append({"index": list(idx), "re": _g12(z.real), "im": _g12(z.imag)})
        rows.append(list(idx) + [_g12(z.real), _g12(z.imag)])
    payload = {
        "name": doc.name,
        "theta": _g12(point.theta),
        "parties": [{"name": nm, "dim": n} for nm, n in state.layout.parties],
        "amplitudes": entries,
        "norm_sq": _g12(float(np.sum(np.abs(amp) ** 2))),
    }
    header = [nm for nm, _ in state.layout.parties] + ["re", "im"]
    return payload, rows, header


def _cmd_classify(args):
    doc = _load_document(args.file)
    point = _eval_point(args)
    amp = _normalized_amplitudes(doc, point)
    layout = doc.layout()
    names = [nm for nm, _ in layout.parties]
    payload = {"name": doc.name, "theta": _g12(point.theta),
               "parties": names, "dims": list(layout.dims)}
    if amp.ndim == 2:
        rank = schmidt_rank(amp, tol=args.tol)
        payload["schmidt_rank"] = int(rank)
        payload["entropy"] = _g12(entanglement_entropy(amp))
        rows = [[payload["schmidt_rank"], payload["entropy"]]]
        return payload, rows, ["schmidt_rank", "entropy"]
    payload["local_ranks"] = [int(r) for r in local_ranks(amp)]
    if amp.shape == (2, 2, 2):
        payload["class"] = slocc_tripartite_class(amp, tol=args.tol)
        payload["tau3"] = _g12(three_tangle(amp))
        rows = [[payload["class"], payload["tau3"],
                 " ".join(str(r) for r in payload["local_ranks"])]]
        return payload, rows, ["class", "tau3", "local_ranks"]
    rows = [[" ".join(str(r) for r in payload["local_ranks"])]]
    return payload, rows, ["local_ranks"]


def _cmd_entropy(args):
    doc = _load_document(args.file)
    point = _eval_point(args)
    amp = _normalized_amplitudes(doc, point)
    layout = doc.layout()
    names = [nm for nm, _ in layout.parties]
    if args.party not in names:
        raise UsageError(f"unknown party {args.party!r}; have {', '.join(names)}")
    k = names.index(args.party)
    entropy = entanglement_entropy(amp, keep=(k,))
    rank = schmidt_rank(amp, keep=(k,), tol=args.tol)
    payload = {"name": doc.name, "theta": _g12(point.theta),
               "party": args.party, "entropy": _g12(entropy),
               "schmidt_rank": int(rank)}
    return payload, [[args.party, _g12(entropy), int(rank)]], \
        ["party", "entropy", "schmidt_rank"]


def _cmd_tangle3(args):
    doc = _load_document(args.file)
    _require_three_qubits(doc)
    point = _eval_point(args)
    amp = _normalized_amplitudes(doc, point)
    tau = three_tangle(amp)
    payload = {"name": doc.name, "theta": _g12(point.theta), "tau3": _g12(tau)}
    return payload, [[_g12(point.theta), _g12(tau)]], ["theta", "tau3"]


def _tau3_at(state, theta):
    amp = state.amplitudes(EvalPoint(theta))
    norm = np.linalg.norm(amp.ravel())
    if norm < 1e-14:
        return None
    return three_tangle(amp / norm)


def _tau3_chunk(payload):
    text, thetas = payload
    state = parse_tangle(text).state()
    out = []
    for t in thetas:
        try:
            out.append(_tau3_at(state, t))
        except DegeneratePointError:
            out.append(None)
    return out


def _golden_min(f, a, b, tol=1e-12):
    """Golden-section minimum of f on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def _scan_workers():
    env = os.environ.get("TL_ENTANGLE_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def _cmd_scan_tangle3(args):
    doc = _load_document(args.file)
    _require_three_qubits(doc)
    lo = _parse_theta(args.theta_min)
    hi = _parse_theta(args.theta_max)
    steps = args.steps
    if steps < 3:
        raise UsageError("--steps must be at least 3")
    if not hi > lo:
        raise UsageError("--theta-max must exceed --theta-min")
    grid = [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    workers = _scan_workers()
    text = doc.pretty()
    if workers > 1 and steps >= 64:
        chunks = [grid[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_tau3_chunk, [(text, ch) for ch in chunks]))
        values = [None] * steps
        for w, chunk_vals in enumerate(results):
            for j, v in enumerate(chunk_vals):
                values[w + j * workers] = v
    else:
        values = _tau3_chunk((text, grid))
    state = doc.state()
    zeros = []
    for i in range(1, steps - 1):
        v = values[i]
        if v is None or values[i - 1] is None or values[i + 1] is None:
            continue
        if v <= values[i - 1] and v <= values[i + 1]:
            x = _golden_min(lambda t: _tau3_at(state, t) or 0.0,
                            grid[i - 1], grid[i + 1])
            tau = _tau3_at(state, x)
            if tau is not None and tau < args.tol:
                zeros.append((x, tau))
    rows = [[_g12(t), None if v is None else _g12(v), "grid"]
            for t, v in zip(grid, values)]
    rows += [[_g12(x), _g12(v), "zero"] for x, v in zeros]
    payload = {
        "name": doc.name,
        "theta_min": _g12(lo), "theta_max": _g12(hi),
        "steps": steps, "tol": _g12(args.tol),
        "rows": [{"theta": _g12(t), "tau3": None if v is None else _g12(v)}
                 for t, v in zip(grid, values)],
        "zeros": [{"theta": _g12(x), "tau3": _g12(v)} for x, v in zeros],
    }
    return payload, rows, ["theta", "tau3", "kind"]


def _connectome_from_args(args):
    try:
        adj = json.loads(args.adj)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--adj is not valid JSON: {exc}")
    if isinstance(adj, dict):
        return Connectome.from_json(args.adj)
    return Connectome(adj)


def _cmd_connectome(args):
    if args.action == "enumerate":
        found = enumerate_connectomes(args.parties, args.punctures)
        payload = {"parties": args.parties, "punctures": args.punctures,
                   "count": len(found),
                   "adjacency": [[list(r) for r in c.adj] for c in found]}
        rows = [[i] + [x for row in c.adj for x in row]
                for i, c in enumerate(found)]
        header = ["index"] + [f"a{i}{j}" for i in range(args.parties)
                              for j in range(args.parties)]
        return payload, rows, header
    if args.adj is None:
        raise UsageError(f"connectome {args.action} needs --adj")
    c = _connectome_from_args(args)
    blocks = classify_connectome(c)
    payload = {
        "parties": c.m, "punctures": c.punctures,
        "adjacency": [list(r) for r in c.adj],
        "reduced": [list(r) for r in reduce_connectome(c).adj],
        "classes": [{"parties": list(block), "label": label}
                    for block, label in blocks],
        "biseparable": is_biseparable(c),
    }
    if args.action == "classify":
        rows = [[" ".join(str(p) for p in block), label]
                for block, label in blocks]
        return payload, rows, ["parties", "label"]
    # action == "state"
    point = _eval_point(args)
    state = representative_state(c)
    amp = state.amplitudes(point)
    entries = []
    rows = []
    for idx in np.ndindex(*amp.shape):
        z = amp[idx]
        entries.append({"index": list(idx), "re": _g12(z.real), "im": _g12(z.imag)})
        rows.append(list(idx) + [_g12(z.real), _g12(z.imag)])
    payload["theta"] = _g12(point.theta)
    payload["party_names"] = [nm for nm, _ in state.layout.parties]
    payload["amplitudes"] = entries
    header = payload["party_names"] + ["re", "im"]
    return payload, rows, header


def _parse_spins(text):
    spins = []
    for part in text.split(","):
        part = part.strip()
        try:
            spins.append(Fraction(part))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad spin {part!r}")
    return spins


def _cmd_rep(args):
    spins = _parse_spins(args.spins)
    if len(spins) not in (2, 3):
        raise UsageError("--spins needs two or three comma-separated values")
    payload = {"spins": [str(j) for j in spins]}
    if len(spins) == 2:
        table = hw_rank_table(*spins)
        payload["table"] = [{"J": str(J), "schmidt_rank": int(r)}
                            for J, r in table]
        rows = [[str(J), int(r)] for J, r in table]
        return payload, rows, ["J", "schmidt_rank"]
    vectors = highest_weight_vectors(spins)
    sectors = {}
    for J, _, _ in vectors:
        sectors[J] = sectors.get(J, 0) + 1
    payload["sectors"] = [{"J": str(J), "multiplicity": sectors[J]}
                          for J in sorted(sectors, reverse=True)]
    rows = [[str(J), sectors[J]] for J in sorted(sectors, reverse=True)]
    if all(j == Fraction(1, 2) for j in spins):
        classes = classify_hw_tripartite()
        payload["classes"] = [{"J": str(J), "index": k, "class": cls}
                              for J, k, cls in classes]
        rows = [[str(J), k, cls] for J, k, cls in classes]
        return payload, rows, ["J", "index", "class"]
    return payload, rows, ["J", "multiplicity"]


def _build_parser():
    parser = _Parser(prog="tl-entangle",
                     description="Evaluate and classify tangle diagram states.")
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=("exact", "numeric"), default="numeric")
    common.add_argument("--theta", help="evaluation angle in radians; accepts 0.5pi")
    common.add_argument("--k", type=int, help="root-of-unity level (default 4)")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command")

    for name, handler, needs_file in (
            ("bracket", _cmd_bracket, True),
            ("reduce", _cmd_reduce, True),
            ("state", _cmd_state, True),
            ("classify", _cmd_classify, True),
            ("entropy", _cmd_entropy, True),
            ("tangle3", _cmd_tangle3, True),
            ("scan-tangle3", _cmd_scan_tangle3, True)):
        p = sub.add_parser(name, parents=[common])
        p.set_defaults(handler=handler)
        if needs_file:
            p.add_argument("file", help="path to a .tl file or a shipped tangle name")
        if name == "entropy":
            p.add_argument("--party", required=True)
        if name == "scan-tangle3":
            p.add_argument("--theta-min", dest="theta_min", required=True)
            p.add_argument("--theta-max", dest="theta_max", required=True)
            p.add_argument("--steps", type=int, default=200)

    p = sub.add_parser("connectome", parents=[common])
    p.add_argument("action", choices=("enumerate", "classify", "state"))
    p.add_argument("--parties", type=int, default=3)
    p.add_argument("--punctures", type=int, default=4)
    p.add_argument("--adj", help="adjacency matrix as JSON, or a connectome JSON object")
    p.set_defaults(handler=_cmd_connectome)

    p = sub.add_parser("rep", parents=[common])
    p.add_argument("action", choices=("hw",))
    p.add_argument("--spins", required=True,
                   help="comma-separated spins, e.g. 1/2,1/2 or 1,2")
    p.set_defaults(handler=_cmd_rep)
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command (try --help)")
        if args.mode == "exact" and args.command not in ("bracket", "reduce"):
            raise UsageError("--mode exact is only available for bracket and reduce")
        payload, rows, header = args.handler(args)
        _emit(args, payload, rows, header)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except TangleParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except DegeneratePointError as exc:
        print(f"degenerate evaluation point: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
