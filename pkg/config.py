# <-- Loads settings from .env using python-dotenv
# In: config.py (Root Folder)

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Where `prove` writes certificates when no -o is given
OUTPUT_DIR = os.getenv("SFM_OUTPUT_DIR", ".")

# --- Fixed settings ---
PROOF_FORMAT_VERSION = 1
DEFAULT_MAX_LEN = 4
DEFAULT_JOBS = 1
GENERATED_PREFIX = "_"
EPS_DISPLAY = "<eps>"

# Input kinds by file extension; `--as` overrides
EXTENSION_KINDS = {
    ".sfm": "term",
    ".rg": "grammar",
    ".gfa": "gfa",
}
CERTIFICATE_EXTENSION = ".wproof"
