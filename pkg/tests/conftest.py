import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

# pin the FUZZYDEPTH_* defaults so a local .env cannot leak into the suite
os.environ.update(
    {
        "FUZZYDEPTH_SEED": "20240101",
        "FUZZYDEPTH_WORKERS": "1",
        "FUZZYDEPTH_PAIRS": "strict",
        "FUZZYDEPTH_QUADRATURE": "256",
        "FUZZYDEPTH_TOP_K": "5",
        "FUZZYDEPTH_BOTTOM_K": "0",
        "FUZZYDEPTH_LOG_LEVEL": "INFO",
    }
)
