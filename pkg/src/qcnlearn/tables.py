"""Static composition tables for the built-in calculi.

Each table maps a row symbol to a list of composition results, one per
column symbol in the calculus ordering, written as space-separated symbol
strings.  The tables are machine-checked against the identity and
converse-composition laws when the calculus is loaded, so a transcription
slip fails fast instead of silently corrupting propagation.
"""

# Allen interval algebra.  Thirteen primitives; E is the identity.
IA_SYMBOLS = ["P", "Pi", "E", "M", "Mi", "O", "Oi", "D", "Di", "S", "Si", "F", "Fi"]
IA_INVERSES = {
    "P": "Pi", "Pi": "P", "E": "E", "M": "Mi", "Mi": "M", "O": "Oi", "Oi": "O",
    "D": "Di", "Di": "D", "S": "Si", "Si": "S", "F": "Fi", "Fi": "F",
}
IA_IDENTITY = "E"

# Derived once by exhaustive enumeration of triples of integer intervals
# (six endpoint values cover every order type of three intervals).
IA_COMPOSITION = {
    "P": ["P", "P Pi E M Mi O Oi D Di S Si F Fi", "P", "P", "P M O D S", "P", "P M O D S", "P M O D S", "P", "P", "P", "P M O D S", "P"],
    "Pi": ["P Pi E M Mi O Oi D Di S Si F Fi", "Pi", "Pi", "Pi Mi Oi D F", "Pi", "Pi Mi Oi D F", "Pi", "Pi Mi Oi D F", "Pi", "Pi Mi Oi D F", "Pi", "Pi", "Pi"],
    "E": ["P", "Pi", "E", "M", "Mi", "O", "Oi", "D", "Di", "S", "Si", "F", "Fi"],
    "M": ["P", "Pi Mi Oi Di Si", "M", "P", "E F Fi", "P", "O D S", "O D S", "P", "M", "M", "O D S", "P"],
    "Mi": ["P M O Di Fi", "Pi", "Mi", "E S Si", "Pi", "Oi D F", "Pi", "Oi D F", "Pi", "Oi D F", "Pi", "Mi", "Mi"],
    "O": ["P", "Pi Mi Oi Di Si", "O", "P", "Oi Di Si", "P M O", "E O Oi D Di S Si F Fi", "O D S", "P M O Di Fi", "O", "O Di Fi", "O D S", "P M O"],
    "Oi": ["P M O Di Fi", "Pi", "Oi", "O Di Fi", "Pi", "E O Oi D Di S Si F Fi", "Pi Mi Oi", "Oi D F", "Pi Mi Oi Di Si", "Oi D F", "Pi Mi Oi", "Oi", "Oi Di Si"],
    "D": ["P", "Pi", "D", "P", "Pi", "P M O D S", "Pi Mi Oi D F", "D", "P Pi E M Mi O Oi D Di S Si F Fi", "D", "Pi Mi Oi D F", "D", "P M O D S"],
    "Di": ["P M O Di Fi", "Pi Mi Oi Di Si", "Di", "O Di Fi", "Oi Di Si", "O Di Fi", "Oi Di Si", "E O Oi D Di S Si F Fi", "Di", "O Di Fi", "Di", "Oi Di Si", "Di"],
    "S": ["P", "Pi", "S", "P", "Mi", "P M O", "Oi D F", "D", "P M O Di Fi", "S", "E S Si", "D", "P M O"],
    "Si": ["P M O Di Fi", "Pi", "Si", "O Di Fi", "Mi", "O Di Fi", "Oi", "Oi D F", "Di", "E S Si", "Si", "Oi", "Di"],
    "F": ["P", "Pi", "F", "M", "Pi", "O D S", "Pi Mi Oi", "D", "Pi Mi Oi Di Si", "D", "Pi Mi Oi", "F", "E F Fi"],
    "Fi": ["P", "Pi Mi Oi Di Si", "Fi", "M", "Oi Di Si", "O", "Oi Di Si", "O D S", "Di", "O", "Di", "E F Fi", "Fi"],
}

# RCC8.  EQ is the identity.
RCC8_SYMBOLS = ["DC", "EC", "PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ"]
RCC8_INVERSES = {
    "DC": "DC", "EC": "EC", "PO": "PO", "EQ": "EQ",
    "TPP": "TPPi", "TPPi": "TPP", "NTPP": "NTPPi", "NTPPi": "NTPP",
}
RCC8_IDENTITY = "EQ"

_RCC8_ALL = "DC EC PO TPP NTPP TPPi NTPPi EQ"
RCC8_COMPOSITION = {
    "DC": [_RCC8_ALL, "DC EC PO TPP NTPP", "DC EC PO TPP NTPP", "DC EC PO TPP NTPP", "DC EC PO TPP NTPP", "DC", "DC", "DC"],
    "EC": ["DC EC PO TPPi NTPPi", "DC EC PO TPP TPPi EQ", "DC EC PO TPP NTPP", "EC PO TPP NTPP", "PO TPP NTPP", "DC EC", "DC", "EC"],
    "PO": ["DC EC PO TPPi NTPPi", "DC EC PO TPPi NTPPi", _RCC8_ALL, "PO TPP NTPP", "PO TPP NTPP", "DC EC PO TPPi NTPPi", "DC EC PO TPPi NTPPi", "PO"],
    "TPP": ["DC", "DC EC", "DC EC PO TPP NTPP", "TPP NTPP", "NTPP", "DC EC PO TPP TPPi EQ", "DC EC PO TPPi NTPPi", "TPP"],
    "NTPP": ["DC", "DC", "DC EC PO TPP NTPP", "NTPP", "NTPP", "DC EC PO TPP NTPP", _RCC8_ALL, "NTPP"],
    "TPPi": ["DC EC PO TPPi NTPPi", "EC PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPP TPPi EQ", "PO TPP NTPP", "TPPi NTPPi", "NTPPi", "TPPi"],
    "NTPPi": ["DC EC PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPPi NTPPi", "PO TPP NTPP TPPi NTPPi EQ", "NTPPi", "NTPPi", "NTPPi"],
    "EQ": ["DC", "EC", "PO", "TPP", "NTPP", "TPPi", "NTPPi", "EQ"],
}

# Point algebra: three primitives over time points, used as the cheap
# verification calculus for brute-force tests.
POINT_SYMBOLS = ["<", "=", ">"]
POINT_INVERSES = {"<": ">", "=": "=", ">": "<"}
POINT_IDENTITY = "="
POINT_COMPOSITION = {
    "<": ["<", "<", "< = >"],
    "=": ["<", "=", ">"],
    ">": ["< = >", ">", ">"],
}
