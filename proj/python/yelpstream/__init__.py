"""Streaming analytics over Yelp-format NDJSON datasets.

Thin wrapper around the compiled core: record parsing, lexicon-based tip
scoring, region resolution, and the three aggregation pipelines (yearly
feature performance, geo-temporal tip sentiment, geo-temporal star
ratings). ``run`` executes a whole pipeline over a dataset directory and
returns the run report as a dict.
"""

import json as _json

from ._core import (
    Lexicon,
    RegionMapper,
    classify,
    month_bucket,
    parse_record,
    tokenize,
)
from ._core import run as _run_raw

__version__ = "0.1.0"

__all__ = [
    "Lexicon",
    "RegionMapper",
    "classify",
    "month_bucket",
    "parse_record",
    "run",
    "tokenize",
]


def run(subcommand, dataset_dir, out_dir, **kwargs):
    """Run a pipeline subcommand (summarize|features|sentiment|stars|all).

    Writes the output CSVs, the error sidecar and run_report.json into
    ``out_dir`` and returns the run report as a dict. Raises RuntimeError
    on config/IO errors.
    """
    return _json.loads(_run_raw(subcommand, str(dataset_dir), str(out_dir), **kwargs))
