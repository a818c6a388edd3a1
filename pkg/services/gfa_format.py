# <-- GFA Adapter: canonical JSON records for automata
# In: services/gfa_format.py

from pydantic import ValidationError

from core.errors import FormatError
from logic.automata_logic import describe, validate_gfa
from logic.automata_models import Gfa, GfaDescription


def read_gfa(text: str) -> Gfa:
    """
    Parses a .gfa record and validates it.

    Raises:
        FormatError: if the text is not a well-formed record.
        GfaValidationError: if the record violates a GFA clause.
    """
    try:
        description = GfaDescription.model_validate_json(text)
    except ValidationError as e:
        problems = [(".".join(str(p) for p in err["loc"]) or "record", err["msg"]) for err in e.errors()]
        raise FormatError("invalid .gfa record", problems) from e
    return validate_gfa(description)


def write_gfa(g: Gfa) -> str:
    """Canonical record: every list sorted, so equal automata serialize byte-equal."""
    return describe(g).model_dump_json(indent=2) + "\n"
