import math
import logging
import numpy as np

# Configure logging for this module
logger = logging.getLogger(__name__)

NON_UNIQUE = "non-unique"


def format_number_custom(num_value) -> str:
    """
    Formats a real number as the shortest decimal string that round-trips
    to the same double (at most 17 significant digits).
    Handles standard int/float and numpy scalar types.
    None is rendered as "non-unique" (a parameter without a unique value).
    """
    if num_value is None:
        return NON_UNIQUE

    if isinstance(num_value, (np.integer, np.floating)):
        num_value = num_value.item()

    if isinstance(num_value, bool) or not isinstance(num_value, (int, float)):
        logger.debug(f"format_number_custom: Received non-numeric value: {num_value} ({type(num_value)})")
        return str(num_value)

    if isinstance(num_value, int):
        return str(num_value)

    if not math.isfinite(num_value):
        raise ValueError(f"Error: non-finite value {num_value} cannot be serialized.")

    # repr() is the shortest round-trip representation (never more than 17 digits)
    return repr(num_value)


def sgn(x: float) -> float:
    """Sign with sgn(0) = +1."""
    return 1.0 if x >= 0 else -1.0


def wrap_angle(angle: float) -> float:
    """Reduces an angle to [0, 2*pi)."""
    wrapped = math.fmod(angle, 2.0 * math.pi)
    if wrapped < 0:
        wrapped += 2.0 * math.pi
    # fmod of values just below a multiple of 2*pi can round up to 2*pi
    if wrapped >= 2.0 * math.pi:
        wrapped = 0.0
    return wrapped


def make_rng(seed: int | None) -> np.random.Generator:
    """Seeded numpy generator; every random draw in the package goes through one."""
    if seed is not None and seed < 0:
        raise ValueError(f"Error: seed must be an unsigned integer, got {seed}.")
    return np.random.default_rng(seed)


def create_progress_bar(done: int, total: int, length: int = 20) -> str:
    """
    Creates a text progress bar for suite reports.
    Args:
        done (int): Number of passed items.
        total (int): Number of items.
        length (int): The total length of the progress bar.
    Returns:
        str: The formatted progress bar string.
    """
    percent = 100.0 * done / total if total else 100.0
    filled_length = int(length * percent // 100)
    bar = '#' * filled_length + '-' * (length - filled_length)
    return f'[{bar}] {done}/{total}'
