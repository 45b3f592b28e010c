#!/usr/bin/env python3
"""Build the replay transcript fixtures under fixtures/.

Three synthetic 39x25 survey transcripts are engineered from the shipped
reference data so that the offline pipeline is fully testable:

  chatgpt_en.jsonl  per-item mean/mode/std_dev match data/reference_item_stats.csv
                    (items 22-39 carry one refusal, so n_valid = 24 there)
  chatgpt_fr.jsonl  item means chosen so that scoring with data/scoring_key.tsv
  bard_fr.jsonl     reproduces the FR rows of data/llm_profiles.csv

The construction is deterministic; rerunning the script reproduces the files
byte for byte.
"""

import csv
import json
import math
import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA = os.path.join(ROOT, "data")
OUT = os.path.join(ROOT, "fixtures")

DIMS = ["UAV", "FUT", "POW", "CO1", "HUM", "PER", "CO2", "GEN", "ASS"]
REPEATS = 25
TIMESTAMP = "2023-07-13T00:00:00Z"

REPLY_TEMPLATES = [
    "{n}", "{n}", "{n}", "{n}", "{n}", "{n}",
    "{n}.", "I would say {n}.", "My answer is {n}.",
    "{n}", "{n}", "Based on general societal norms, I would respond with {n}.",
]
REFUSAL = "As an AI language model, I cannot provide a single number for this."


def load_catalog(locale):
    path = os.path.join(DATA, f"catalog_{locale.lower()}.tsv")
    items = {}
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n").split("\t")
        for line in f:
            row = dict(zip(header, line.rstrip("\n").split("\t")))
            items[int(row["item_id"])] = row["prompt_text"]
    assert len(items) == 39
    return items


def load_reference_stats(model):
    stats = {}
    with open(os.path.join(DATA, "reference_item_stats.csv"), encoding="utf-8") as f:
        for row in csv.DictReader(f):
            if row["model"] == model and row["locale"] == "EN":
                stats[int(row["item_id"])] = (
                    float(row["mean"]), int(row["mode"]), float(row["std_dev"]))
    assert len(stats) == 39
    return stats


def load_profile(model, locale):
    with open(os.path.join(DATA, "llm_profiles.csv"), encoding="utf-8") as f:
        for row in csv.DictReader(f):
            if row["model"] == model and row["locale"] == locale:
                return {d: float(row[d]) for d in DIMS}
    raise KeyError((model, locale))


def load_key():
    key = {d: [] for d in DIMS}
    with open(os.path.join(DATA, "scoring_key.tsv"), encoding="utf-8") as f:
        for line in f:
            if line.startswith("#") or line.startswith("dimension"):
                continue
            dim, iid, rev = line.split("\t")
            key[dim].append((int(iid), rev.strip() == "true"))
    return key


def sample_std(counts, n):
    if n <= 1:
        return 0.0
    total = sum(v * c for v, c in enumerate(counts, start=1))
    mean = total / n
    ss = sum(c * (v - mean) ** 2 for v, c in enumerate(counts, start=1))
    return math.sqrt(ss / (n - 1))


def mode_of(counts):
    best_v, best_c = 0, -1
    for v, c in enumerate(counts, start=1):
        if c > best_c:
            best_v, best_c = v, c
    return best_v


def find_multiset(n, total, mode, std):
    """Search count vectors over values 1..7 with the exact sum, the given
    mode (ties resolved to the smallest value) and the closest sample std."""
    best = None

    def rec(value, counts, remaining, rem_sum):
        nonlocal best
        if value == 7:
            if rem_sum == 7 * remaining:
                counts = counts + [remaining]
                if mode_of(counts) == mode:
                    dev = abs(sample_std(counts, n) - std)
                    if best is None or dev < best[0] - 1e-15:
                        best = (dev, tuple(counts))
            return
        lo = max(0, rem_sum - 7 * remaining + (7 - value) * 0)
        for c in range(0, remaining + 1):
            rest = remaining - c
            s = rem_sum - value * c
            if s < rest * (value + 1) or s > rest * 7:
                continue
            rec(value + 1, counts + [c], rest, s)

    rec(1, [], n, total)
    if best is None:
        raise RuntimeError(f"no multiset for n={n} total={total} mode={mode}")
    return best


def spread(values, seed):
    """Deterministic Fisher-Yates with an explicit LCG so the fixture bytes
    do not depend on the Python version."""
    state = seed & 0xFFFFFFFF
    out = list(values)
    for i in range(len(out) - 1, 0, -1):
        state = (1103515245 * state + 12345) & 0x7FFFFFFF
        j = state % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def render_reply(item_id, repeat_index, value):
    t = REPLY_TEMPLATES[(item_id * 31 + repeat_index * 7) % len(REPLY_TEMPLATES)]
    return t.format(n=value)


def write_transcript(path, run_id, locale, model_name, prompts, per_item_replies):
    """per_item_replies: item_id -> list of 25 (raw_text, parsed_or_None)."""
    with open(path, "w", encoding="utf-8") as f:
        for repeat in range(REPEATS):
            for item_id in range(1, 40):
                raw, parsed = per_item_replies[item_id][repeat]
                rec = {
                    "run_id": run_id,
                    "item_id": item_id,
                    "locale": locale,
                    "repeat_index": repeat,
                    "timestamp": TIMESTAMP,
                    "prompt_text": prompts[item_id],
                    "raw_response": raw,
                    "parsed_value": parsed,
                    "provider_kind": "scripted",
                    "model_name": model_name,
                }
                f.write(json.dumps(rec, ensure_ascii=False, separators=(",", ":")))
                f.write("\n")


def build_en_fixture():
    prompts = load_catalog("EN")
    stats = load_reference_stats("chatgpt")
    replies = {}
    report = []
    for item_id in range(1, 40):
        mean, mode, std = stats[item_id]
        n = 25 if item_id <= 21 else 24
        total = round(mean * n)
        assert abs(total / n - mean) < 5e-4, (item_id, mean, n)
        dev, counts = find_multiset(n, total, mode, std)
        report.append((item_id, dev, sample_std(counts, n)))
        values = []
        for v, c in enumerate(counts, start=1):
            values.extend([v] * c)
        values = spread(values, seed=1000 + item_id)
        row = []
        refusal_at = (item_id * 7) % REPEATS if item_id >= 22 else None
        vi = 0
        for repeat in range(REPEATS):
            if repeat == refusal_at:
                row.append((REFUSAL, None))
            else:
                v = values[vi]; vi += 1
                row.append((render_reply(item_id, repeat, v), v))
        assert vi == n
        replies[item_id] = row
    write_transcript(os.path.join(OUT, "chatgpt_en.jsonl"), "chatgpt-en", "EN",
                     "chatgpt-3.5-fixture", prompts, replies)
    worst = max(r[1] for r in report)
    print(f"chatgpt_en.jsonl: worst std deviation from target {worst:.6f}")
    for iid, dev, got in report:
        if dev > 1e-3:
            print(f"  WARNING item {iid}: std off by {dev:.4f} (got {got:.4f})")


def build_fr_fixture(model, run_id, model_name):
    prompts = load_catalog("FR")
    profile = load_profile(model, "FR")
    key = load_key()
    oriented_sum = {}  # item_id -> 25 * oriented mean (integer)
    for dim in DIMS:
        members = key[dim]
        k = len(members)
        q = round(25 * k * profile[dim])
        base, rem = divmod(q, k)
        for idx, (iid, _rev) in enumerate(members):
            oriented_sum[iid] = base + (1 if idx < rem else 0)
    item_total = {}
    for item_id in range(1, 40):
        covered = False
        for dim in DIMS:
            for iid, rev in key[dim]:
                if iid == item_id:
                    t = oriented_sum[iid]
                    # raw mean is 8 - oriented mean for reverse-coded items
                    item_total[item_id] = (25 * 8 - t) if rev else t
                    covered = True
        if not covered:
            item_total[item_id] = 100  # items outside the key: mean 4.0
    replies = {}
    for item_id in range(1, 40):
        total = item_total[item_id]
        assert 25 <= total <= 175, (item_id, total)
        base, rem = divmod(total, 25)
        values = [base + 1] * rem + [base] * (25 - rem)
        values = spread(values, seed=2000 + item_id)
        row = []
        for repeat in range(REPEATS):
            v = values[repeat]
            row.append((render_reply(item_id, repeat, v), v))
        replies[item_id] = row
    write_transcript(os.path.join(OUT, f"{run_id.replace('-', '_')}.jsonl"), run_id,
                     "FR", model_name, prompts, replies)
    # verify: score the engineered means with the key
    means = {iid: item_total[iid] / 25 for iid in range(1, 40)}
    worst = 0.0
    for dim in DIMS:
        vals = [(8 - means[iid] if rev else means[iid]) for iid, rev in key[dim]]
        got = sum(vals) / len(vals)
        worst = max(worst, abs(got - profile[dim]))
    print(f"{run_id}.jsonl: worst dimension deviation {worst:.6f}")


def main():
    os.makedirs(OUT, exist_ok=True)
    build_en_fixture()
    build_fr_fixture("chatgpt", "chatgpt-fr", "chatgpt-3.5-fixture")
    build_fr_fixture("bard", "bard-fr", "bard-2023.07.13-fixture")


if __name__ == "__main__":
    sys.exit(main())
