"""Certified bounds on an updated L2-regularized linear classifier."""

from ._segbound import *  # noqa: F401,F403
from ._segbound import __doc__  # noqa: F401
