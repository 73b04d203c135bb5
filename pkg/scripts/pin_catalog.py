"""
Recompute the pinned fields of data/expected/<name>.json for catalog entries.

A file is written only when the monoid cone and the wedge-support cone agree;
otherwise the entry is reported and left untouched.

    python scripts/pin_catalog.py [NAME ...]
"""

import json
import logging
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from cli import AnalysisService, CatalogService
from config import Config

PINNED_FIELDS = (
    "positive_system",
    "simple_roots",
    "adapted_subset",
    "a_Z_basis",
    "dims",
    "rank",
    "monoid_generators",
    "cone",
    "edge_dim",
    "sharp",
    "wavefront",
    "chamber_contained",
    "edge_contains_a_tilde",
    "compact_quotient",
    "h_lim_is_h",
    "oracle_agrees",
)

logging.basicConfig(level=Config.LOG_LEVEL, format=Config.LOG_FORMAT)
logger = logging.getLogger("pin_catalog")

catalog = CatalogService()
service = AnalysisService()
status = 0
for name in sys.argv[1:] or catalog.list():
    report = service.analyze(catalog.load(name), skip_numeric=True).comparable()
    if not report["oracle_agrees"] or report["cone"] != report["oracle_cone"]:
        logger.error("%s: monoid and wedge-support cones disagree, not pinned", name)
        status = 1
        continue
    path = os.path.join(Config.EXPECTED_DIR, f"{name}.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({k: report[k] for k in PINNED_FIELDS}, fh, indent=2)
        fh.write("\n")
    print("Pinned", name, "->", path)
sys.exit(status)
