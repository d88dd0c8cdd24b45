"""Module-level settings shared by the library and the command line."""

# Minor search: enumeration steps over candidate branch sets before giving up
DEFAULT_SEARCH_BUDGET = 10_000_000

# Largest graphs handed to the backtracking isomorphism test
MAX_ISOMORPHISM_VERTICES = 12

# Largest host graph for the delete/contract oracle
MAX_ORACLE_VERTICES = 8

# Naturals backend works on 64-bit values only
NATURALS_LIMIT = 2**64

# Integers beyond this are written to JSON as decimal strings
JSON_SAFE_INTEGER = 2**53

# Identity of the (trivial) unit group
UNIT_IDENTITY = 1

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
