"""
xspec-eval - cross-spectral biometric evaluation and score fusion toolkit
"""

from loguru import logger

__version__ = "0.1.0"

# Library use stays silent; the CLI enables logging and installs sinks.
logger.disable(__name__)
