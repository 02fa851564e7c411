"""Design and simulation toolkit for a cold-trapped-ion quantum computer.

The heavy lifting lives in the compiled `_ionforge` extension; this package
re-exports its full surface.
"""

from ._ionforge import *  # noqa: F401,F403
from ._ionforge import __version__  # noqa: F401
