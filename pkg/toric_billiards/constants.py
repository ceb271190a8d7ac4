"""
Constants and Material Definitions

Single source of truth for edge materials, wall kinds, exit codes and the
default limits used throughout the package.
"""

from enum import Enum, IntEnum

# =============================================================================
# Edge Materials
# =============================================================================


class EdgeMaterial(Enum):
    """Material tag carried by every edge of a billiards graph"""

    REFLECT = "reflect"
    REFRACT = "refract"

    @classmethod
    def normalize(cls, value) -> "EdgeMaterial":
        """
        Normalize a material name to an EdgeMaterial.

        Args:
            value: EdgeMaterial or a string such as "Reflect", "refract"

        Returns:
            The matching EdgeMaterial

        Raises:
            ValueError: If the value names no known material
        """
        if isinstance(value, cls):
            return value
        if not isinstance(value, str):
            raise ValueError(f"unknown material {value!r}")

        lowered = value.strip().lower()
        if lowered in {"reflect", "reflection", "mirror"}:
            return cls.REFLECT
        if lowered in {"refract", "refraction", "metalens"}:
            return cls.REFRACT
        raise ValueError(f"unknown material {value!r}")


# Integer codes used in the dense material matrix
MATERIAL_NONE = 0
MATERIAL_CODES = {EdgeMaterial.REFLECT: 1, EdgeMaterial.REFRACT: 2}


class WallKind(Enum):
    """How a hyperplane of the affine arrangement treats the beam"""

    WINDOW = "window"
    MIRROR = "mirror"
    METALENS = "metalens"


# =============================================================================
# Exit Codes
# =============================================================================


class ExitCode(IntEnum):
    """Process exit codes of the command-line interface"""

    OK = 0
    MISMATCH = 1
    USAGE = 2
    CAPACITY = 3
    INTERNAL = 4


# =============================================================================
# Enumeration Constants
# =============================================================================


class EnumerationDefaults:
    """Limits for exhaustive state-space enumeration"""

    MIN_N = 3
    MAX_N = 9  # 2 * 9 * 9! = 6,531,840 states
    # theta_power iterates directly below this many steps
    POWER_THRESHOLD = 4096
    THREADS = 1


class SievingDefaults:
    """Defaults for tableau and cyclic sieving computations"""

    MAX_GAMMA_M = 8
    ROOT_TOLERANCE = 1e-6
    MAX_CSP_N = 7


class VerificationDefaults:
    """Defaults for the randomized verification suites"""

    SEED = 20240917
    SAMPLES = 1000
    LIFT_STEPS = 10000
    LEMMA_TREES = 100
    FOREST_N = 5
    CYCLE_N = 5


# =============================================================================
# Render Constants
# =============================================================================


class RenderDefaults:
    """Layout and palette defaults for SVG output"""

    WIDTH = 240
    HEIGHT = 240
    STRIP_CAP = 64
    SHOW_LABELS = True

    COLOR_REFLECT = "#d62728"
    COLOR_REFRACT = "#17becf"
    COLOR_WINDOW = "#9e9e9e"
    COLOR_INK = "#222222"
    COLOR_STONE = "#444444"
    COLOR_COIN = "#f2b705"
    COLOR_TRAJECTORY = "#1f3fbf"

    FONT_SIZE = 12
    STROKE_WIDTH = 2
