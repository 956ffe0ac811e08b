"""Command-line entry point: reproducible experiments with CSV/JSON artifacts.

Verbs: generate, distance, diversity, neighborhood, popularity,
histogram, table2, curve, maxdiverse, export-lp, microscope. Every
command that writes files also drops a ``manifest.json`` (full config
plus content hashes of any input files) beside its outputs, so each CSV
can be regenerated bit-for-bit.

Exit codes: 0 success, 2 validation error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .domains import (
    DomainError,
    DomainSpec,
    Euclidean,
    Explicit,
    FourAlignment,
    GsBal,
    GsCat,
    ResourceGuard,
    SingleCrossing,
    SpAxis,
    SpDf,
    Spoc,
    enumerate_domain,
    parse_ranking,
    read_domain_file,
    write_domain_file,
)
from .distances import oracle_for
from .diversity import (
    direct_neighborhood,
    distance_histogram,
    exact_outdiv,
    pairwise_distance_matrix,
    popularity,
    sampled_outdiv,
)
from .maxdiverse import (
    AnnealingParams,
    exact_energy,
    export_kmedian_lp,
    ic_domain,
    simulated_annealing,
    threshold_ic,
)
from .rankings import reverse

EXACT_CUTOVER_M = 8
TABLE2_EXACT_FAMILIES = ("voterev", "gscat", "gsbal", "sp", "spdf", "spoc")
TABLE2_SAMPLED_FAMILIES = ("sc", "1d", "2d", "3d")
CURVE_SKIP_AT_20 = {"spoc", "3d"}


def make_spec(family: str, m: int, seed: int = 0, domain_file: str | None = None) -> DomainSpec:
    """Domain spec for a CLI family tag."""
    if family == "sp":
        return SpAxis(axis=tuple(range(m)))
    if family == "spoc":
        return Spoc(cycle=tuple(range(m)))
    if family == "spdf":
        return SpDf(m=m)
    if family == "gscat":
        return GsCat(m=m)
    if family == "gsbal":
        return GsBal(m=m)
    if family == "sc":
        return SingleCrossing(m=m, seed=seed)
    if family in ("1d", "2d", "3d"):
        return Euclidean(m=m, d=int(family[0]), seed=seed)
    if family == "voterev":
        ident = tuple(range(m))
        return Explicit(rankings=(ident, reverse(ident)))
    if family == "fouralign":
        if m % 4:
            raise DomainError(f"fouralign needs m divisible by 4, got {m}")
        return FourAlignment(base_m=m // 4)
    if family == "explicit":
        if not domain_file:
            raise DomainError("family=explicit requires --domain-file")
        _, members = read_domain_file(domain_file)
        return Explicit(rankings=tuple(members))
    raise DomainError(f"unknown family {family!r}")


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _write_manifest(out_dir: Path, command: str, config: dict, outputs: list[str],
                    input_files: list[str] | None = None) -> None:
    hashes = {}
    for f in input_files or []:
        hashes[f] = hashlib.sha256(Path(f).read_bytes()).hexdigest()
    manifest = {
        "tool": "outdiv",
        "version": __version__,
        "command": command,
        "config": config,
        "input_hashes": hashes,
        "outputs": outputs,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _members_for(spec: DomainSpec):
    return enumerate_domain(spec)


def _report_for(spec: DomainSpec, mode: str, n_samples: int, reps: int, seed: int):
    m = spec.m
    if mode == "auto":
        mode = "exact" if m <= EXACT_CUTOVER_M else "sampled"
    if mode == "exact":
        return exact_outdiv(_members_for(spec)), "exact"
    return sampled_outdiv(spec, n_samples=n_samples, reps=reps, seed=seed), "sampled"


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args) -> int:
    spec = make_spec(args.family, args.m, args.seed, args.domain_file)
    members = _members_for(spec)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{args.family}_m{args.m}.domain"
    write_domain_file(path, members, family=args.family)
    _write_manifest(out_dir, "generate", _config(args), [path.name],
                    [args.domain_file] if args.domain_file else None)
    print(f"{len(members)} rankings -> {path}")
    return 0


def cmd_distance(args) -> int:
    spec = make_spec(args.family, args.m, args.seed, args.domain_file)
    v = parse_ranking(args.ranking)
    if len(v) != args.m:
        raise DomainError(f"ranking has {len(v)} entries, expected m={args.m}")
    print(oracle_for(spec)(v))
    return 0


def cmd_diversity(args) -> int:
    spec = make_spec(args.family, args.m, args.seed, args.domain_file)
    report, mode = _report_for(spec, args.mode, args.n_samples, args.reps, args.seed)
    payload = {"family": args.family, "mode": mode, **report.to_dict()}
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        name = f"diversity_{args.family}_m{args.m}.json"
        (out_dir / name).write_text(text + "\n")
        _write_manifest(out_dir, "diversity", _config(args), [name],
                        [args.domain_file] if args.domain_file else None)
    print(text)
    return 0


def cmd_neighborhood(args) -> int:
    spec = make_spec(args.family, args.m, args.seed, args.domain_file)
    d1, norm = direct_neighborhood(_members_for(spec))
    print(f"{d1} {_fmt(norm)}")
    return 0


def cmd_popularity(args) -> int:
    spec = make_spec(args.family, args.m, args.seed, args.domain_file)
    table = popularity(_members_for(spec))
    lines = ["ranking,pop,npop"]
    for r, p, n in zip(table.members, table.pop, table.npop):
        lines.append(f"{' '.join(map(str, r))},{_fmt(float(p))},{_fmt(float(n))}")
    _emit_csv(args, "popularity", f"popularity_{args.family}_m{args.m}.csv", lines)
    return 0


def cmd_histogram(args) -> int:
    spec = make_spec(args.family, args.m, args.seed, args.domain_file)
    layers = distance_histogram(_members_for(spec))
    lines = ["distance,count"]
    lines.extend(f"{i},{c}" for i, c in enumerate(layers))
    _emit_csv(args, "histogram", f"histogram_{args.family}_m{args.m}.csv", lines)
    return 0


def cmd_table2(args) -> int:
    m = args.m
    lines = ["family,m,size,ansd,outdiv,dist1,dist1_norm,std"]
    for family in TABLE2_EXACT_FAMILIES:
        spec = make_spec(family, m)
        rep = exact_outdiv(_members_for(spec))
        d1 = rep.layers[1] if len(rep.layers) > 1 else 0
        lines.append(
            f"{family},{m},{rep.size},{_fmt(rep.ansd)},{_fmt(rep.out_div)},"
            f"{d1},{_fmt(d1 / rep.size)},"
        )
    for family in TABLE2_SAMPLED_FAMILIES:
        sizes, ansds, outdivs, d1s, d1norms = [], [], [], [], []
        for inst in range(args.reps):
            spec = make_spec(family, m, seed=args.seed + inst)
            rep = exact_outdiv(_members_for(spec))
            d1 = rep.layers[1] if len(rep.layers) > 1 else 0
            sizes.append(rep.size)
            ansds.append(rep.ansd)
            outdivs.append(rep.out_div)
            d1s.append(d1)
            d1norms.append(d1 / rep.size)
        lines.append(
            f"{family},{m},{_fmt(float(np.mean(sizes)))},{_fmt(float(np.mean(ansds)))},"
            f"{_fmt(float(np.mean(outdivs)))},{_fmt(float(np.mean(d1s)))},"
            f"{_fmt(float(np.mean(d1norms)))},{_fmt(float(np.std(outdivs, ddof=1)))}"
        )
    if args.lc_file:
        _, members = read_domain_file(args.lc_file)
        rep = exact_outdiv(members)
        d1 = rep.layers[1] if len(rep.layers) > 1 else 0
        lines.append(
            f"lc,{m},{rep.size},{_fmt(rep.ansd)},{_fmt(rep.out_div)},"
            f"{d1},{_fmt(d1 / rep.size)},"
       )
    _emit_csv(args, "table2", "table2.csv", lines,
              input_files=[args.lc_file] if args.lc_file else None)
    return 0


def cmd_curve(args) -> int:
    families = args.families.split(",")
    m_lo, m_hi = _parse_range(args.m_range)
    lines = ["family,m,outdiv,std"]
    for family in families:
        for m in range(m_lo, m_hi + 1):
            if m >= 20 and family in CURVE_SKIP_AT_20 and not args.force:
                continue
            spec = make_spec(family, m, seed=args.seed)
            rep = sampled_outdiv(spec, n_samples=args.n_samples, reps=args.reps, seed=args.seed)
            lines.append(f"{family},{m},{_fmt(rep.out_div)},{_fmt(rep.std)}")
    _emit_csv(args, "curve", "curve.csv", lines)
    return 0


def cmd_maxdiverse(args) -> int:
    m = args.m
    methods = args.methods.split(",")
    sizes = [int(s) for s in args.sizes.split(",")]
    t_lo, t_hi = _parse_range(args.thresholds)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = ["method,m,size_or_t,outdiv,std"]
    outputs = []

    def outdiv_of(members) -> float:
        if m <= EXACT_CUTOVER_M:
            return exact_energy(members, m)
        return sampled_outdiv(
            Explicit(rankings=tuple(members)), n_samples=args.n_samples,
            reps=args.reps, seed=args.seed,
        ).out_div

    for method in methods:
        if method == "ic":
            for k in sizes:
                vals = [outdiv_of(ic_domain(m, k, seed=args.seed + r)) for r in range(args.reps)]
                lines.append(f"ic,{m},{k},{_fmt(float(np.mean(vals)))},{_fmt(_std(vals))}")
        elif method == "anneal":
            for k in sizes:
                vals = []
                for r in range(args.reps):
                    members = simulated_annealing(m, k, AnnealingParams(seed=args.seed + r))
                    vals.append(outdiv_of(members))
                    if r == 0:
                        name = f"anneal_m{m}_k{k}.domain"
                        write_domain_file(out_dir / name, members, family="anneal")
                        outputs.append(name)
                lines.append(f"anneal,{m},{k},{_fmt(float(np.mean(vals)))},{_fmt(_std(vals))}")
        elif method == "threshold":
            for t in range(t_lo, t_hi + 1):
                members = threshold_ic(m, t, seed=args.seed)
                if not members:
                    continue
                lines.append(f"threshold,{m},{t},{_fmt(outdiv_of(members))},")
        else:
            raise DomainError(f"unknown method {method!r}")
    for family in args.overlay.split(",") if args.overlay else []:
        spec = make_spec(family, m, seed=args.seed)
        members = _members_for(spec)
        lines.append(f"{family},{m},{len(members)},{_fmt(outdiv_of(members))},")
    path = out_dir / "sizes.csv"
    path.write_text("\n".join(lines) + "\n")
    outputs.append("sizes.csv")
    _write_manifest(out_dir, "maxdiverse", _config(args), outputs)
    print(path)
    return 0


def cmd_export_lp(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = f"kmedian_m{args.m}_k{args.k}.lp"
    export_kmedian_lp(args.m, args.k, out_dir / name)
    _write_manifest(out_dir, "export-lp", _config(args), [name])
    print(out_dir / name)
    return 0


def cmd_microscope(args) -> int:
    spec = make_spec(args.family, args.m, args.seed, args.domain_file)
    members = _members_for(spec)
    matrix = pairwise_distance_matrix(members)
    table = popularity(members)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    mat_name = f"microscope_{args.family}_m{args.m}_distances.csv"
    pop_name = f"microscope_{args.family}_m{args.m}_popularity.csv"
    with open(out_dir / mat_name, "w") as fh:
        for row in matrix:
            fh.write(",".join(str(int(x)) for x in row) + "\n")
    pop_lines = ["ranking,pop,npop"]
    for r, p, n in zip(table.members, table.pop, table.npop):
        pop_lines.append(f"{' '.join(map(str, r))},{_fmt(float(p))},{_fmt(float(n))}")
    (out_dir / pop_name).write_text("\n".join(pop_lines) + "\n")
    _write_manifest(out_dir, "microscope", _config(args), [mat_name, pop_name],
                    [args.domain_file] if args.domain_file else None)
    print(out_dir / mat_name)
    print(out_dir / pop_name)
    return 0


# ---------------------------------------------------------------------------
# plumbing


def _std(vals) -> float:
    return float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0


def _emit_csv(args, command: str, name: str, lines: list[str],
              input_files: list[str] | None = None) -> None:
    text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / name).write_text(text)
        _write_manifest(out_dir, command, _config(args), [name], input_files)
        print(out_dir / name)
    else:
        sys.stdout.write(text)


def _config(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func" and v is not None}


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi if hi else lo)


def _add_common(p: argparse.ArgumentParser, family: bool = True) -> None:
    if family:
        p.add_argument("--family", required=True,
                       help="sp|spoc|spdf|gscat|gsbal|sc|1d|2d|3d|voterev|fouralign|explicit")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--domain-file", help="explicit domain file (family=explicit)")
    p.add_argument("--out", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="outdiv",
                                     description="Outer diversity of preference domains")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a domain file")
    _add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("distance", help="swap distance from a ranking to a domain")
    _add_common(p)
    p.add_argument("--ranking", required=True, help="space-separated candidate indices")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("diversity", help="exact or sampled outer diversity")
    _add_common(p)
    p.add_argument("--mode", choices=("exact", "sampled", "auto"), default="auto")
    p.add_argument("--n-samples", type=int, default=1000)
    p.add_argument("--reps", type=int, default=10)
    p.set_defaults(func=cmd_diversity)

    p = sub.add_parser("neighborhood", help="direct neighborhood |D_1|")
    _add_common(p)
    p.set_defaults(func=cmd_neighborhood)

    p = sub.add_parser("popularity", help="per-member popularity CSV")
    _add_common(p)
    p.set_defaults(func=cmd_popularity)

    p = sub.add_parser("histogram", help="distance layer histogram CSV")
    _add_common(p)
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("table2", help="size/ansd/outdiv/neighborhood table")
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=10, help="instances per sampled family")
    p.add_argument("--lc-file", help="explicit domain file for the LC row")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("curve", help="outdiv vs m CSV")
    p.add_argument("--families", default="sp,spoc,spdf,gscat,gsbal,sc,1d")
    p.add_argument("--m-range", default="2:20")
    p.add_argument("--n-samples", type=int, default=1000)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true",
                   help="also run the families omitted at m=20 for cost")
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("maxdiverse", help="heuristic most-diverse search")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--methods", default="ic,anneal,threshold")
    p.add_argument("--sizes", default="2,4,8,16,32,64,128,256")
    p.add_argument("--thresholds", default="5:25")
    p.add_argument("--n-samples", type=int, default=1000)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--overlay", default="",
                   help="structured families to evaluate at their own size")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_maxdiverse)

    p = sub.add_parser("export-lp", help="k-median binary program (LP format)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_lp)

    p = sub.add_parser("microscope", help="member distance matrix + popularity CSVs")
    _add_common(p)
    p.set_defaults(func=cmd_microscope)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceGuard as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
