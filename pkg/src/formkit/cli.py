"""Command-line surface: corpus generation, evaluation, cleanup, debugging.

Exit codes: 0 success, 1 usage, 2 parse failure, 3 I/O.
Scores are reported x100.  All randomness lives in `gen`; `eval` is fully
deterministic and its results are independent of --jobs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from pathlib import Path

from . import align_eval, cleanup, edit_metrics, form_tree, pools, synth
from .ganted import GantedConfig, ganted
from .form_tree import MalformedParse
from .rng import MASK

SCHEMA_VERSION = 1

EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_pools(pool_dir: str | None) -> pools.ContentPools:
    pool_dir = pool_dir or os.environ.get("FORMKIT_POOLS")
    if pool_dir:
        return pools.load_pools(pool_dir)
    return pools.ContentPools()


# ---------------------------------------------------------------------------
# gen


def _gen_one(args: tuple) -> tuple[str, dict[str, str]]:
    seed, index, width, height, table_p, pool_dir, svg = args
    cfg = synth.PageConfig(
        width=width, height=height, seed=(seed ^ index) & MASK, table_probability=table_p
    )
    page = synth.gen_page(cfg, _load_pools(pool_dir))
    stem = f"page_{index:05d}"
    files = {
        f"{stem}.gt.json": form_tree.serialize_json(page.gt),
        f"{stem}.layout.json": json.dumps(_layout_dict(page), ensure_ascii=False, indent=1),
    }
    if svg:
        files[f"{stem}.svg"] = synth.render_svg(page)
    return stem, files


def _layout_dict(page: synth.FormPage) -> dict:
    def prim(p):
        if isinstance(p, synth.TextRun):
            return {"type": "text", "x": p.x, "y": p.y, "height": p.height, "text": p.text}
        if isinstance(p, synth.RuleLine):
            return {
                "type": "line",
                "x1": p.x1, "y1": p.y1, "x2": p.x2, "y2": p.y2,
                "thickness": p.thickness, "dotted": p.dotted,
            }
        return {
            "type": "box",
            "left": p.left, "top": p.top, "right": p.right, "bottom": p.bottom,
            "thickness": p.thickness,
        }

    return {
        "schema_version": SCHEMA_VERSION,
        "width": page.width,
        "height": page.height,
        "provenance": page.provenance,
        "elements": [
            {
                "id": g.id,
                "kind": g.kind,
                "bbox": [g.bbox.left, g.bbox.top, g.bbox.right, g.bbox.bottom],
                "primitives": [prim(p) for p in g.primitives],
            }
            for g in page.groups
        ],
    }


def cmd_gen(args) -> int:
    out = Path(args.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    if args.pools:
        try:
            _load_pools(args.pools)
        except (IOError, pools.FormatError) as e:
            print(f"I/O error: {e}", file=sys.stderr)
            return EXIT_IO
    tasks = [
        (args.seed, i, args.width, args.height, args.table_probability, args.pools, args.svg)
        for i in range(args.count)
    ]
    results: dict[str, dict[str, str]] = {}
    if args.jobs > 1 and tasks:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            for stem, files in ex.map(_gen_one, tasks):
                results[stem] = files
    else:
        for t in tasks:
            stem, files = _gen_one(t)
            results[stem] = files
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "seed": args.seed,
        "count": args.count,
        "config": {
            "width": args.width,
            "height": args.height,
            "table_probability": args.table_probability,
            "svg": bool(args.svg),
        },
        "files": [],
    }
    try:
        for stem in sorted(results):
            for name in sorted(results[stem]):
                (out / name).write_text(results[stem][name], encoding="utf-8")
                manifest["files"].append(name)
        cfg_hash = hashlib.sha256(
            json.dumps(manifest["config"], sort_keys=True).encode()
        ).hexdigest()
        manifest["config_hash"] = cfg_hash
        (out / "manifest.json").write_text(
            json.dumps(manifest, indent=1, sort_keys=True), encoding="utf-8"
        )
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(manifest['files'])} files to {out}")
    return 0


# ---------------------------------------------------------------------------
# eval


def _eval_one(args: tuple) -> dict:
    stem, pred_text, gt_text, do_collapse, do_repair, window, passes, threshold = args
    record: dict = {"doc": stem}
    log_summary = []
    if do_collapse:
        collapsed = cleanup.collapse_repeats(pred_text)
        if collapsed != pred_text:
            log_summary.append("collapse_repeats")
        pred_text = collapsed
    if do_repair:
        pred_text, rlog = cleanup.repair_json(pred_text)
        log_summary.extend(f"{rule}@{off}" for rule, off, _ in rlog.entries)
    pred = form_tree.parse_json(pred_text, lenient_tables=True)
    gt = form_tree.parse_json(gt_text, lenient_tables=True)

    pred_lt = form_tree.to_label_tree(pred, form_tree.all_row_major(pred))
    gt_lt = form_tree.to_label_tree(gt, form_tree.all_row_major(gt))
    nted = edit_metrics.nted(pred_lt, gt_lt)
    cfg = GantedConfig(window=window, passes=passes)
    score, rep = ganted(pred, gt, cfg)

    mcfg = align_eval.MatchConfig(text_threshold=threshold)
    eprf = align_eval.entity_prf(pred, gt, mcfg)
    rprf = align_eval.relationship_prf(pred, gt, mcfg)
    record.update(
        {
            "nted_x100": round(100 * nted, 4),
            "ganted_x100": round(100 * score, 4),
            "ganted_x100_per_pass": [round(100 * s, 4) for s in rep.pass_scores],
            "orientations": {
                "pred": [o.value for o in rep.pred_orientations],
                "gt": [o.value for o in rep.gt_orientations],
                "combos_evaluated": rep.combos_evaluated,
                "capped": rep.combos_capped,
            },
            "entity_prf": {k: asdict(v) for k, v in eprf.items()},
            "relationship_prf": asdict(rprf),
            "cleanup_log": log_summary,
        }
    )
    return record


def cmd_eval(args) -> int:
    pred_dir, gt_dir = Path(args.pred_dir), Path(args.gt_dir)
    if not pred_dir.is_dir() or not gt_dir.is_dir():
        print("I/O error: prediction and GT paths must be directories", file=sys.stderr)
        return EXIT_IO
    pred_files = {p.name.split(".")[0]: p for p in sorted(pred_dir.glob("*.json"))}
    gt_files = {
        p.name.split(".")[0]: p
        for p in sorted(gt_dir.glob("*.json"))
        if not p.name.endswith("layout.json") and p.name != "manifest.json"
    }
    pred_files = {s: p for s, p in pred_files.items() if not p.name.endswith("layout.json") and p.name != "manifest.json"}
    stems = sorted(set(pred_files) & set(gt_files))
    for s in sorted(set(pred_files) ^ set(gt_files)):
        print(f"warning: unmatched stem {s!r}, skipped", file=sys.stderr)

    tasks = []
    for stem in stems:
        try:
            pred_text = pred_files[stem].read_text(encoding="utf-8")
            gt_text = gt_files[stem].read_text(encoding="utf-8")
        except OSError as e:
            print(f"I/O error: {e}", file=sys.stderr)
            return EXIT_IO
        tasks.append(
            (stem, pred_text, gt_text, args.collapse, args.repair, args.window, args.passes, args.threshold)
        )

    records = {}
    try:
        if args.jobs > 1 and tasks:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                for rec in ex.map(_eval_one, tasks):
                    records[rec["doc"]] = rec
        else:
            for t in tasks:
                rec = _eval_one(t)
                records[rec["doc"]] = rec
    except (json.JSONDecodeError, MalformedParse) as e:
        print(f"parse error: {e} (use --repair for raw model output)", file=sys.stderr)
        return EXIT_PARSE

    per_doc = [records[s] for s in sorted(records)]
    n = len(per_doc)
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "window": args.window,
            "passes": args.passes,
            "text_threshold": args.threshold,
            "collapse": bool(args.collapse),
            "repair": bool(args.repair),
        },
        "documents": per_doc,
        "corpus_means": {
            "nted_x100": sum(r["nted_x100"] for r in per_doc) / n if n else 0.0,
            "ganted_x100": sum(r["ganted_x100"] for r in per_doc) / n if n else 0.0,
            "entity_f": sum(r["entity_prf"]["micro"]["f_measure"] for r in per_doc) / n if n else 0.0,
            "relationship_f": sum(r["relationship_prf"]["f_measure"] for r in per_doc) / n if n else 0.0,
        },
    }
    try:
        Path(args.report).write_text(json.dumps(report, indent=1, sort_keys=True), encoding="utf-8")
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    print(f"{'doc':<16}{'nTED':>8}{'GAnTED':>9}{'EntF':>7}{'RelF':>7}")
    for r in per_doc:
        print(
            f"{r['doc']:<16}{r['nted_x100']:>8.1f}{r['ganted_x100']:>9.1f}"
            f"{100 * r['entity_prf']['micro']['f_measure']:>7.1f}"
            f"{100 * r['relationship_prf']['f_measure']:>7.1f}"
        )
    m = report["corpus_means"]
    print(f"{'mean':<16}{m['nted_x100']:>8.1f}{m['ganted_x100']:>9.1f}"
          f"{100 * m['entity_f']:>7.1f}{100 * m['relationship_f']:>7.1f}")
    return 0


# ---------------------------------------------------------------------------
# clean / ted


def cmd_clean(args) -> int:
    try:
        text = Path(args.in_file).read_text(encoding="utf-8")
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    collapsed = cleanup.collapse_repeats(text)
    if collapsed != text:
        print("collapsed degenerate repeats", file=sys.stderr)
    repaired, log = cleanup.repair_json(collapsed)
    for rule, offset, desc in log.entries:
        print(f"repair: {rule} @ {offset}: {desc}", file=sys.stderr)
    try:
        Path(args.out_file).write_text(repaired, encoding="utf-8")
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    return 0


def cmd_ted(args) -> int:
    try:
        a_text = Path(args.a).read_text(encoding="utf-8")
        b_text = Path(args.b).read_text(encoding="utf-8")
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        a = form_tree.parse_json(a_text, lenient_tables=True)
        b = form_tree.parse_json(b_text, lenient_tables=True)
    except (json.JSONDecodeError, MalformedParse) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    a_lt = form_tree.to_label_tree(a, form_tree.all_row_major(a))
    b_lt = form_tree.to_label_tree(b, form_tree.all_row_major(b))
    t = edit_metrics.ted(a_lt, b_lt)
    n = edit_metrics.nted(a_lt, b_lt)
    g, _ = ganted(a, b, GantedConfig(window=args.window, passes=args.passes))
    print(f"TED     {t:.4f}")
    print(f"nTED    {100 * n:.2f}")
    print(f"GAnTED  {100 * g:.2f}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="formkit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a synthetic form corpus")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--out-dir", required=True)
    g.add_argument("--width", type=int, default=768)
    g.add_argument("--height", type=int, default=1152)
    g.add_argument("--table-probability", type=float, default=0.2)
    g.add_argument("--pools", default=None, help="pool directory (default: $FORMKIT_POOLS)")
    g.add_argument("--svg", action="store_true")
    g.add_argument("--jobs", type=int, default=1)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("eval", help="evaluate predicted parses against ground truth")
    e.add_argument("pred_dir")
    e.add_argument("gt_dir")
    e.add_argument("--report", default="report.json")
    e.add_argument("--window", type=int, default=10)
    e.add_argument("--passes", type=int, default=1)
    e.add_argument("--threshold", type=float, default=0.0)
    e.add_argument("--collapse", action="store_true")
    e.add_argument("--repair", action="store_true")
    e.add_argument("--jobs", type=int, default=1)
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("clean", help="collapse repeats and repair JSON")
    c.add_argument("in_file")
    c.add_argument("out_file")
    c.set_defaults(func=cmd_clean)

    t = sub.add_parser("ted", help="print TED/nTED/GAnTED for two parse files")
    t.add_argument("a")
    t.add_argument("b")
    t.add_argument("--window", type=int, default=10)
    t.add_argument("--passes", type=int, default=1)
    t.set_defaults(func=cmd_ted)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
