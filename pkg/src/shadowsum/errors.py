"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable ``code`` (used by the CLI error
object) and an optional ``context`` mapping.
"""


class ShadowSumError(Exception):
    code = "error"

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def as_dict(self):
        return {"code": self.code, "message": self.message, "context": self.context}


class UnsupportedAlgebra(ShadowSumError):
    code = "unsupported_algebra"


class WeylCapExceeded(ShadowSumError):
    code = "weyl_cap_exceeded"


class DimensionMismatch(ShadowSumError):
    code = "dimension_mismatch"


class NotDominant(ShadowSumError):
    code = "not_dominant"


class DenominatorZero(ShadowSumError):
    code = "denominator_zero"


class InvalidLevel(ShadowSumError):
    code = "invalid_level"


class ModularIdentityFailure(ShadowSumError):
    code = "modular_identity_failure"


class NotInAlcove(ShadowSumError):
    code = "not_in_alcove"


class OnWall(ShadowSumError):
    code = "on_wall"


class NonIntegerFusion(ShadowSumError):
    code = "non_integer_fusion"


class NegativeFusion(ShadowSumError):
    code = "negative_fusion"


class ParseError(ShadowSumError):
    code = "parse_error"


class DuplicateId(ParseError):
    code = "duplicate_id"


class ForestGenusMismatch(ParseError):
    code = "forest_genus_mismatch"


class EulerMismatch(ShadowSumError):
    code = "euler_mismatch"


class SideInconsistent(ShadowSumError):
    code = "side_inconsistent"


class ColorNotInAlcove(ShadowSumError):
    code = "color_not_in_alcove"


class BadAlpha0(ShadowSumError):
    code = "bad_alpha0"


class AlphaNotInSupport(ShadowSumError):
    code = "alpha_not_in_support"


class InvalidField(ShadowSumError):
    code = "invalid_field"
