#!/usr/bin/env python3
"""Search the activation-model fit knobs against the anchor statistics.

Drives the circuit_probe binary over candidate knob vectors and scores each
against the target set (mean/worst activation latencies per supply point plus
restore-time ordering). Prints the best candidates so the winner can be frozen
into CircuitParams defaults.
"""
import json
import random
import re
import subprocess
import sys

PROBE = "./build/tools/circuit_probe"

TARGETS = {  # vpp -> (mean or None, worst)
    2.5: (11.6, 12.9),
    1.9: (None, 13.3),
    1.8: (None, 14.2),
    1.7: (13.6, 16.9),
}
WORST_DEPTH = 0.25  # expected extra tail depth at 10k runs vs probe runs


def run(knobs, runs):
    cmd = [PROBE, "--runs", str(runs)]
    for k, v in knobs.items():
        cmd += [f"--{k}", str(v)]
    out = subprocess.run(cmd, capture_output=True, text=True, timeout=2400).stdout
    rows = {}
    for line in out.splitlines():
        m = re.match(r"\s+(\d\.\d\d)\s+([\d.]+)\s+([\d.]+)\s+([\d.]+)\s+([\d.]+)\s+([\d.]+)\s+([\d.]+)\s+(\d+)", line)
        if m:
            vpp = float(m.group(1))
            rows[vpp] = dict(mean=float(m.group(2)), std=float(m.group(3)),
                             mx=float(m.group(5)), tras_mu=float(m.group(6)),
                             tras_mx=float(m.group(7)), bad=int(m.group(8)))
    return rows


def score(rows):
    loss = 0.0
    for vpp, (mean, worst) in TARGETS.items():
        if vpp not in rows:
            return 1e9
        r = rows[vpp]
        if mean is not None:
            loss += ((r["mean"] - mean) / 0.35) ** 2 * 2.0
        loss += ((r["mx"] + WORST_DEPTH - worst) / 0.35) ** 2
    # restore time must grow strictly from 2.5 down to 1.9 and not collapse
    # below (small plateau tolerated; completion target shrinks with vsat)
    for hi, lo in ((2.5, 2.0), (2.0, 1.9)):
        if hi in rows and lo in rows:
            if rows[lo]["tras_mu"] < rows[hi]["tras_mu"] * 1.02:
                loss += 30.0
    for hi, lo in ((1.9, 1.8), (1.8, 1.7)):
        if hi in rows and lo in rows:
            if rows[lo]["tras_mu"] < rows[hi]["tras_mu"] * 0.90:
                loss += 30.0
    for vpp in (1.7, 1.8, 1.9, 2.0, 2.5):
        if rows.get(vpp, {}).get("bad", 1):
            loss += 100.0
    # trcd std must widen as vpp drops
    grid = sorted(v for v in rows)
    for lo, hi in zip(grid, grid[1:]):
        if rows[lo]["std"] <= rows[hi]["std"]:
            loss += 25.0
    return loss


BOUNDS = {
    "kprime": (12, 120),
    "sa": (0.5, 4.0),
    "margin": (0.008, 0.034),
    "imb": (0.02, 0.20),
    "alpha": (0.3, 1.0),
    "beta": (0.4, 1.6),
    "vread": (0.75, 0.93),
    "ss": (0.03, 0.05),
}


def clamp(knobs):
    out = {}
    for k, v in knobs.items():
        lo, hi = BOUNDS[k]
        out[k] = round(min(hi, max(lo, v)), 4)
    return out


def main():
    if len(sys.argv) > 1 and sys.argv[1] == "--single":
        knobs = {}
        runs = 2000
        for kv in sys.argv[2:]:
            k, v = kv.split("=")
            if k == "runs":
                runs = int(v)
            else:
                knobs[k] = float(v)
        rows = run(knobs, runs)
        print(knobs, "loss", round(score(rows), 2))
        for v in sorted(rows, reverse=True):
            print(v, rows[v])
        return

    budget = int(sys.argv[1]) if len(sys.argv) > 1 else 150
    seed_knobs = dict(kprime=48, sa=0.8, margin=0.031, imb=0.10, alpha=0.5,
                      beta=0.5, vread=0.75, ss=0.035)
    rng = random.Random(7)
    best = (score(run(seed_knobs, 500)), seed_knobs)
    print("seed", round(best[0], 2), best[1], flush=True)
    cur = best
    for i in range(budget):
        # shrink step size over time; random restart kick occasionally
        temp = max(0.08, 0.5 * (1.0 - i / budget))
        cand = dict(cur[1])
        nmut = rng.choice([1, 1, 2, 3])
        for _ in range(nmut):
            k = rng.choice(list(BOUNDS))
            lo, hi = BOUNDS[k]
            cand[k] = cand[k] + rng.gauss(0, temp) * (hi - lo) * 0.35
        cand = clamp(cand)
        s = score(run(cand, 500))
        if s < cur[0]:
            cur = (s, cand)
            if s < best[0]:
                best = cur
                print(f"[{i}] best {round(s,2)} {cand}", flush=True)
        elif rng.random() < 0.10:
            cur = (s, cand)  # occasional uphill move
    print("\nFINAL", round(best[0], 2), json.dumps(best[1]))


if __name__ == "__main__":
    main()
