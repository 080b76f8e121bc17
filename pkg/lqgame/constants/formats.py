# Instance file formats

# Binary: magic, u32 n, u32 d, f64 p, then n*d little-endian f64 row-major
BINARY_MAGIC = b"LQG1"
BINARY_HEADER_FORMAT = "<4sIId"
BINARY_HEADER_SIZE = 20
BINARY_ENTRY_FORMAT = "<f8"

# CSV: first line "n,d,p", then n rows of d comma-separated decimals
CSV_HEADER_FIELDS = 3

# Hard-instance stanza: "hard: case=<1|2> n=<> d=<> l=<> [k=<>] p=<>"
HARD_STANZA_PREFIX = "hard:"
HARD_STANZA_KEYS = ("case", "n", "d", "l", "k", "p")

# Reports
REPORT_VERSION = 1
REPORT_FLOAT_DIGITS = 17
INLINE_VECTOR_MAX = 1000
