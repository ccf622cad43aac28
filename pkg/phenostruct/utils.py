"""Shared settings and helpers used by the verification scripts"""

import argparse
import hashlib
import math
from pathlib import Path

import numpy as np
import pandas as pd


# Tunable constants of every check, grouped by concern.
CONFIG = {
    "sampling": {
        "box": (-2.0, 2.0),
        "angle_box": (0.2, math.pi - 0.2),
        "margin": 1e-3,
        "ratio_cap": 10.0,
        "budget": 10_000,
    },
    "params": {
        "beta": 2.0,
        "gamma": 1.0,
        "p": 0.5,
        "c": 2.0,
        "k": 1.0,
        "l": 1.0,
        "q": 1.0,
    },
    "numeric": {
        "h_base": 1e-5,
        "tol_rank": 1e-6,
        "gap_ratio": 10.0,
        "agreement": 0.99,
        "resample": 20,
    },
    "tolerances": {
        "identity": 1e-8,
        "sensitivity": 1e-3,
        "perturbation": 0.1,
        "invariance": 1e-9,
        "identity_action": 1e-12,
        "group": 1e-9,
        "infinitesimal": 1e-6,
        "cycle": 1e-9,
        "symmetry": 1e-9,
        "translation": 1e-9,
        "area": 1e-10,
        "law": 1e-9,
        "embedding": 1e-12,
        "candidate": 1e-2,
    },
    "motions": {
        "local_radius": 0.5,
        "param_box": (-2.0, 2.0),
        "margin": 0.1,
        "group_points": 6,
    },
    "run": {
        "samples": 1000,
        "seed": 42,
        "format": "json",
        "sensitivity_samples": 20,
    },
    "heap": {
        "exhaustive_max": 12,
        "random_tables": 100_000,
        "random_carrier": 3,
        "chunk": 5_000,
    },
    "counting": {"search_bound": 40},
    "laws": {
        "mass": (0.5, 5.0),
        "force": (0.5, 5.0),
        "resistance": (0.5, 10.0),
        "emf": (1.0, 12.0),
        "internal": (0.1, 3.0),
        "incidence_deg": (5.0, 85.0),
        "index": (1.1, 2.5),
        "temperature": (-50.0, 200.0),
        "expansion": (1e-5, 5e-5),
        "length": (0.5, 2.0),
        "focus": (1.0, 5.0),
        "lens_offset": (0.05, 0.3),
        "object_far": 10.0,
        "object_gap": 0.5,
        "line_angle_deg": (-60.0, 60.0),
        "line_offset": (0.5, 3.0),
    },
    "report": {"version": "phenostruct-report/1"},
}


def get_args(command: str) -> argparse.Namespace:
    """Set up command-line interface and get arguments."""
    parser = argparse.ArgumentParser(
        description="Verification laboratory for phenomenologically symmetric geometries"
    )
    parser.add_argument(
        "command",
        nargs="?",
        default=command,
        choices=["verify", "list", "tables", "laws"],
        help=f"Subcommand to run. (Default: {command})",
    )
    parser.add_argument(
        "--suite",
        type=str,
        default="all",
        help="`all`, a module name, or comma-separated catalog ids.",
    )
    parser.add_argument(
        "--samples",
        type=int,
        default=CONFIG["run"]["samples"],
        help="Samples per check.",
    )
    parser.add_argument(
        "--tol-identity",
        type=float,
        default=CONFIG["tolerances"]["identity"],
        help="Normalized identity residual threshold.",
    )
    parser.add_argument(
        "--tol-rank",
        type=float,
        default=CONFIG["numeric"]["tol_rank"],
        help="Relative singular-value threshold.",
    )
    parser.add_argument(
        "--seed", type=int, default=CONFIG["run"]["seed"], help="Base seed."
    )
    parser.add_argument(
        "-o",
        "--out",
        type=str,
        default=None,
        help="Filepath to output report or table.",
    )
    parser.add_argument(
        "--format",
        type=str,
        default=CONFIG["run"]["format"],
        choices=["json", "text", "xlsx", "csv"],
        help="Output format.",
    )
    parser.add_argument(
        "--law",
        type=str,
        default="newton",
        help="Law id for the `laws` subcommand.",
    )
    parser.add_argument(
        "--sizes",
        type=int,
        nargs=2,
        default=(6, 4),
        help="Observation table size |M| |N| for the `laws` subcommand.",
    )
    parser.add_argument("--dryrun", action="store_true")
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Output all logs and interim tables.",
    )
    parser.add_argument(
        "-np",
        "--noprint",
        action="store_true",
        help="Do not output the report file.",
    )
    parser.add_argument(
        "-j",
        "--jobs",
        type=int,
        default=0,
        help="Worker processes (0 = one per CPU, 1 = serial).",
    )
    return parser.parse_args()


def rng_for(seed: int, name: str) -> np.random.Generator:
    """Random stream derived from the base seed and a check name."""
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "little"))


def preview(df: pd.DataFrame, title: str) -> None:
    """Print a table preview."""
    print(f"🔍 Preview of {title}:\n" + "=" * 72)
    print(df)
    print()


def save_table(df: pd.DataFrame, output: str) -> None:
    """Write a table as CSV, creating parent folders."""
    Path(output).parent.mkdir(parents=True, exist_ok=True)
    print(f"📄 Saving copy of final table to: {output}...")
    df.to_csv(output, index=False)
