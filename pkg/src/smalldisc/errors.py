"""Exception hierarchy shared by every module."""


class SmallDiscError(Exception):
    pass


class DomainError(SmallDiscError, ValueError):
    """Input lies outside the mathematical domain of an operation."""


class SizeError(SmallDiscError):
    """A configured resource cap (modulus, group order, coefficient count) was exceeded."""


class CanonicalizationError(DomainError):
    pass


class CharacterTableError(SmallDiscError):
    """Dixon-Schneider failed to produce a certified table."""


class ParseError(SmallDiscError, ValueError):
    pass
