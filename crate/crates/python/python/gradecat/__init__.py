"""Group-graded finite linear categories and their smash coverings.

Reports come back as plain dicts with the same shape as the CLI payloads.
"""

from ._native import (
    Category,
    Diagram,
    GradecatError,
    Grading,
    find_morphism,
)

__all__ = ["Category", "Diagram", "GradecatError", "Grading", "find_morphism"]
