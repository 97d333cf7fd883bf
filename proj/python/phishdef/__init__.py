from ._phishdef import *  # noqa: F401,F403
