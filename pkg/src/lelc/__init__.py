"""Low-energy line codes for on-chip network links.

Codecs (Flip-N-Write, tree codes, mapping codes, a compound code) plus the
analysis needed to compare them: rate, 1s/transition counts, flit overhead,
crosstalk on a wire grid, and a single-link throttling simulator.
"""

from .bits import BitString, chunk, nrzi_evolve, weight
from .codecs import (ChunkedPrefixCodec, Codec, CompoundCodec, FnwCodec,
                     IdentityCodec, MapCodec, PrefixCodec, mapping1, mapping2,
                     parse_codec, tc1, tc1p, tc2)
from .errors import (CorruptStreamError, DecodeError, FormatError, FramingError,
                     IncompleteParseError, InvalidParameterError, LelcError,
                     MalformedTraceError, TableViolation)
from .metrics import (CrosstalkWeightTable, LinkConfig, crosstalk_report,
                      energy_report, flit_count)
from .profiler import DatawordHistogram, frequency_order, profile, synthesize_trace

__version__ = "0.1.0"
