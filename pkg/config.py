import os

from dotenv import load_dotenv

basedir = os.path.abspath(os.path.dirname(__file__))

load_dotenv(os.path.join(basedir, ".env"))


class Config:
    # Logging
    LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")
    LOG_FORMAT = os.environ.get(
        "LOG_FORMAT", "%(asctime)s [%(levelname)8s] %(name)s: %(message)s"
    )

    # Catalog locations
    CATALOG_DIR = os.environ.get("CATALOG_DIR") or os.path.join(
        basedir, "data", "catalog"
    )
    EXPECTED_DIR = os.environ.get("EXPECTED_DIR") or os.path.join(
        basedir, "data", "expected"
    )
    CATALOG_JOBS = int(os.environ.get("CATALOG_JOBS", "1"))

    # Safety bounds for exact enumerations
    MAX_WEYL_ELEMENTS = int(os.environ.get("MAX_WEYL_ELEMENTS", str(10**7)))
    MAX_WEDGE_TERMS = int(os.environ.get("MAX_WEDGE_TERMS", str(10**6)))

    # Grassmannian degeneration check
    GRASS_TMAX = int(os.environ.get("GRASS_TMAX", "50"))
    GRASS_CONVERGE_TOL = float(os.environ.get("GRASS_CONVERGE_TOL", "1e-8"))
    GRASS_DIVERGE_TOL = float(os.environ.get("GRASS_DIVERGE_TOL", "1e-3"))
    GRASS_SAMPLES = int(os.environ.get("GRASS_SAMPLES", "5"))
    GRASS_SEED = int(os.environ.get("GRASS_SEED", "0"))
    GRASS_INTERIOR_MARGIN = float(os.environ.get("GRASS_INTERIOR_MARGIN", "0.5"))
    GRASS_MAX_REJECTIONS = int(os.environ.get("GRASS_MAX_REJECTIONS", "200"))

    # Hyperboloid polar decomposition demo
    POLAR_SAMPLES = int(os.environ.get("POLAR_SAMPLES", "10000"))
    POLAR_SEED = int(os.environ.get("POLAR_SEED", "0"))
    POLAR_RESIDUAL_TOL = float(os.environ.get("POLAR_RESIDUAL_TOL", "1e-9"))
