from ._horoeq import *  # noqa: F401,F403
from ._horoeq import __version__, NumericGuard  # noqa: F401
