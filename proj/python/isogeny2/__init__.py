"""Explicit isogenies between Jacobians of genus 2 curves."""

import json

from ._isogeny2 import IsogenyError, dtg_matrix, gundlach_to_igusa, igusa_invariants, run_json

__all__ = ["IsogenyError", "run", "igusa_invariants", "gundlach_to_igusa", "dtg_matrix"]


def run(config):
    """Run the pipeline. `config` is a dict with the same keys as the CLI's JSON config."""
    return json.loads(run_json(json.dumps(config)))
