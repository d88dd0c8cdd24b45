import json
import logging

from fcsg_minors.config import JSON_SAFE_INTEGER
from fcsg_minors.errors import InputError

logger = logging.getLogger(__name__)


def label_key(label):
    """Sort key for vertex labels

    Integers and digit-only strings order numerically, everything else
    after them in string order. Mixed int/str label sets therefore sort
    without a TypeError.

    Args:
        label (int | str): Vertex label

    Returns:
        tuple: Key usable with sorted()
    """
    if isinstance(label, bool):
        raise InputError(f"boolean is not a vertex label: {label}")
    if isinstance(label, int):
        return (0, label, "")
    text = str(label)
    if text.isdigit():
        return (0, int(text), text)
    return (1, 0, text)


def parse_int(value, what="integer"):
    """Convert a JSON value to an int

    Accepts JSON integers and decimal strings (large values are written as
    strings, see json_number).

    Args:
        value: Value read from JSON or the command line
        what (str): Name used in the error message

    Returns:
        int: The parsed integer
    """
    if isinstance(value, bool):
        raise InputError(f"{what} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("-").isdigit():
        return int(value.strip())
    raise InputError(f"{what} must be an integer, got {value!r}")


def json_number(value):
    """Integer for JSON output; decimal string past the 53-bit safe range

    Args:
        value (int): Integer to emit

    Returns:
        int | str: Value that survives any JSON reader losslessly
    """
    if abs(value) > JSON_SAFE_INTEGER:
        return str(value)
    return value


def json_label(label):
    """Vertex label for JSON output; integers go through json_number."""
    if isinstance(label, int):
        return json_number(label)
    return label


def load_json_file(path):
    """Read and parse a JSON document

    Args:
        path (str | Path): File to read

    Returns:
        object: Parsed JSON
    """
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as e:
        raise InputError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        logger.error(f"Error parsing {path}: {str(e)}")
        raise InputError(f"malformed JSON in {path}: {e.msg} (line {e.lineno})") from e
    except UnicodeDecodeError as e:
        logger.error(f"Error decoding {path}: {str(e)}")
        raise InputError(f"{path} is not valid UTF-8 text") from e
    except OSError as e:
        logger.error(f"Error reading {path}: {str(e)}")
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e


def dump_json(document):
    """Serialize a document the one way every command prints it

    Key order is the insertion order of the dicts we build, so output is
    byte-identical across runs.

    Args:
        document: JSON-compatible object

    Returns:
        str: Indented JSON text
    """
    return json.dumps(document, indent=2, ensure_ascii=False)
