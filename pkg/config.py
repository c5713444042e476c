#!/usr/bin/env python
# coding: utf-8

import os

from dotenv import load_dotenv
load_dotenv()

# === CONFIG & SETUP ==========================================

# === EVALUATION POINTS ======
DEFAULT_Q_POINTS = ("1/2", "1/3", "2/3", "7/10")

# === SERIES ======
DEFAULT_EPS = "1e-30"
DEFAULT_DIGITS = 30
DEFAULT_TERM_CAP = 10_000

# === LIMIT PROBE ======
LIMIT_Q_POINTS = ("9/10", "99/100", "999/1000")
LIMIT_EPS = "1e-12"
CLASSICAL_TARGET_EPS = "1e-15"
CLASSICAL_TERM_CAP = 1 << 22

# === REPORTS ===
REPORT_DIGITS = 40

# === STRINGS ===
MAX_ONES = 8

# === DEFAULT GRIDS ===
# (minimum allowed, default min, default max) per parameter
IDENTITY_GRIDS = {
    "EQ11": {"n": (1, 1, 20), "l": (0, 0, 20)},
    "EQ12": {"n": (1, 1, 20), "l": (0, 0, 20)},
    "EQ13": {"n": (1, 1, 20)},
    "EQ14": {"n": (1, 1, 20), "l": (1, 1, 20)},
    "CERT15": {"n": (1, 1, 15), "k": (1, 1, 15)},
    "CERT16": {"n": (1, 1, 15), "k": (1, 1, 15)},
    "CERT17": {"m": (0, 0, 15), "k": (1, 1, 15)},
    "CERT19": {"l": (1, 1, 15), "k": (1, 1, 15)},
    "EQ20": {"a": (0, 0, 4), "n": (1, 1, 15)},
    "EQ21": {"a": (0, 0, 4), "n": (1, 1, 15)},
    "EQ22": {"a": (0, 0, 3), "b": (1, 1, 3), "n": (1, 1, 12)},
    "EQ23": {"n": (1, 1, 12), "k": (1, 1, 12), "a": (0, 0, 3)},
    "EQ26": {"m": (1, 1, 3), "s": (0, 0, 4), "n": (1, 1, 12)},
    "EQ32": {"m": (0, 0, 2), "s": (1, 1, 4), "n": (1, 1, 12)},
    "EQ33": {"m": (1, 1, 3), "s": (0, 0, 4), "n": (1, 1, 12)},
    "EQ34": {"m": (0, 0, 2), "s": (1, 1, 4), "n": (1, 1, 12)},
}

RECONSTRUCTION_N_MAX = 12
# exponent ranges of the brute-force EQ20 and EQ22 checks; n always runs to n_max
RECONSTRUCTION_EQ20_A_MAX = 3
RECONSTRUCTION_EQ22_A_MAX = 2
RECONSTRUCTION_EQ22_B_MAX = 2


# === RUNTIME OVERRIDES ===
def get_term_cap():
    raw = os.getenv("QZETA_TERM_CAP", "").strip()
    if not raw:
        return DEFAULT_TERM_CAP
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap < 1:
        raise ValueError(f"QZETA_TERM_CAP must be a positive integer, got {raw!r}")
    return cap


def get_memo_enabled():
    return os.getenv("QZETA_MEMO", "1").strip().lower() not in {"0", "false", "off", "no"}


def get_run_log_path():
    return os.getenv("QZETA_RUN_LOG", "").strip() or None


def get_workers():
    try:
        return max(1, int(os.getenv("QZETA_WORKERS", "1")))
    except ValueError:
        return 1
