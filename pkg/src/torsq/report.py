"""JSON-lines output and summary figures."""

from __future__ import annotations

import json
import sys
from collections import Counter, defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "figure.dpi": 120,
}


def dumps(rec) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


class Sink:
    """Writes records to a stream and keeps them for the summary and figures."""

    def __init__(self, out_dir: str | None = None, stream=None):
        self.records: list[dict] = []
        self.out_dir = Path(out_dir) if out_dir else None
        self.stream = stream if stream is not None else sys.stdout
        self._fh = None
        if self.out_dir:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            self._fh = open(self.out_dir / "records.jsonl", "w")

    def emit(self, rec: dict):
        self.records.append(rec)
        line = dumps(rec)
        print(line, file=self._fh or self.stream)

    def close(self, summary: dict):
        line = dumps(summary)
        if self._fh:
            print(line, file=self._fh)
            self._fh.close()
            (self.out_dir / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
            summary = dict(summary)
            summary["figures"] = render(self.records, self.out_dir)
        print(dumps(summary), file=self.stream)


def record_ok(rec) -> bool:
    if rec.get("informational"):
        return True
    if "ok" in rec:
        return bool(rec["ok"])
    if "verdict" in rec:
        return rec["verdict"] in ("agree", "zero") and all(rec.get("checks", {}).values())
    return True


def summarize(records, **extra) -> dict:
    counts = Counter("pass" if record_ok(r) else "fail" for r in records)
    out = {"summary": True, "records": len(records), "passed": counts["pass"], "failed": counts["fail"]}
    info = [r for r in records if r.get("informational")]
    if info:
        out["informational"] = len(info)
        out["informational_agree"] = sum(bool(r.get("ok")) for r in info)
    verdicts = Counter(r["verdict"] for r in records if "verdict" in r)
    if verdicts:
        out["verdicts"] = dict(sorted(verdicts.items()))
    out.update(extra)
    return out


def render(records, out_dir) -> list[str]:
    """Write whichever figures the records support; return their file names."""
    out_dir = Path(out_dir)
    made = []
    with plt.rc_context(STYLE):
        if records:
            made.append(_suite_bars(records, out_dir / "pass_counts.png"))
        q8 = [r for r in records if "central" in r]
        if q8:
            made.append(_central_values(q8, out_dir / "central_values.png"))
        tt = [r for r in records if "ttilde" in r]
        for k, r in enumerate(tt):
            made.append(_ttilde_pattern(r, out_dir / f"ttilde_{k}.png"))
    return [p.name for p in made]


def _group(rec) -> str:
    suite = rec.get("suite") or ("q8" if "central" in rec else "other")
    f = rec.get("field") or (rec.get("curve", "").split(":")[0] if "curve" in rec else "")
    return f"{suite}\n{f}" if f else suite


def _suite_bars(records, path):
    ok, bad = defaultdict(int), defaultdict(int)
    for r in records:
        (ok if record_ok(r) else bad)[_group(r)] += 1
    keys = sorted(set(ok) | set(bad))
    fig, ax = plt.subplots(figsize=(max(3.0, 0.7 * len(keys) + 1.5), 2.8))
    xs = range(len(keys))
    ax.bar(xs, [ok[k] for k in keys], color="#4c72b0", label="pass")
    ax.bar(xs, [bad[k] for k in keys], bottom=[ok[k] for k in keys], color="#c44e52", label="fail")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(keys)
    ax.set_ylabel("instances")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def _central_values(records, path):
    fig, ax = plt.subplots(figsize=(4.2, 3.0))
    marks = {(0, True): ("o", "#4c72b0", "square, pairing 0"),
             (1, False): ("s", "#dd8452", "non-square, pairing 1"),
             (0, False): ("x", "#c44e52", "non-square, pairing 0"),
             (1, True): ("+", "#c44e52", "square, pairing 1")}
    seen = set()
    for i, r in enumerate(records):
        if not r["central"]:
            ax.plot(i, 0, marker="v", color="0.6", linestyle="none",
                    label=None if "zero" in seen else "zero")
            seen.add("zero")
            continue
        key = (r["pairing"], r["central_sqclass"] == 1)
        m, c, lab = marks[key]
        ax.plot(i, r["central"], marker=m, color=c, linestyle="none", label=None if lab in seen else lab)
        seen.add(lab)
    ax.set_xlabel("instance")
    ax.set_ylabel("2q + L2")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def _ttilde_pattern(rec, path):
    rows = rec["ttilde"]
    n = len(rows)
    fig, ax = plt.subplots(figsize=(2.8, 2.8))
    grid = [[0 if x in ("0", "0/1") else 1 for x in row] for row in rows]
    ax.imshow(grid, cmap="Greys", vmin=0, vmax=1.5)
    for i in range(n):
        for j in range(len(rows[i])):
            if grid[i][j]:
                ax.text(j, i, rows[i][j], ha="center", va="center", fontsize=5, color="w")
    ax.set_xticks([])
    ax.set_yticks([])
    ax.set_title(rec.get("twist", ""))
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
