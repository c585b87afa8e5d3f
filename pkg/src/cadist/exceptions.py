"""Exception hierarchy for cadist."""

from __future__ import annotations


class CadistError(Exception):
    """Base exception for all cadist errors."""

    def __init__(self, message: str, details: dict[str, str] | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ConfigurationError(CadistError):
    """Configuration error (missing or malformed config, bundle or presentation file)."""


# Automata


class AutomatonError(CadistError):
    """Invalid automaton or automaton operation."""


class AlphabetMismatchError(AutomatonError):
    """Two automata that must share an alphabet do not."""

    def __init__(self, left: list[str], right: list[str]) -> None:
        super().__init__(
            f"Alphabet mismatch: {left} vs {right}",
            {"left": ",".join(left), "right": ",".join(right)},
        )


class TapeCountError(AutomatonError):
    """Tape count does not match."""

    def __init__(self, expected: int, actual: int) -> None:
        super().__init__(
            f"Expected {expected} tape(s), got {actual}",
            {"expected": str(expected), "actual": str(actual)},
        )
        self.expected = expected
        self.actual = actual


class UnknownSymbolError(AutomatonError):
    """Symbol outside the alphabet."""

    def __init__(self, symbol: str, letters: list[str] | None = None) -> None:
        msg = f"Unknown symbol: {symbol!r}"
        if letters:
            msg += f". Valid symbols: {', '.join(letters)}"
        super().__init__(msg, {"symbol": symbol})
        self.symbol = symbol


class InvalidPositionsError(AutomatonError):
    """Tape positions are out of range or not strictly increasing."""

    def __init__(self, positions: list[int], total_tapes: int) -> None:
        super().__init__(
            f"Invalid tape positions {positions} for {total_tapes} tape(s)",
            {"positions": ",".join(map(str, positions)), "total_tapes": str(total_tapes)},
        )


class NoCompletionError(AutomatonError):
    """No accepting state is reachable from a state."""

    def __init__(self, state: int) -> None:
        super().__init__(
            f"No accepting state reachable from state {state}", {"state": str(state)}
        )
        self.state = state


class AutomatonFormatError(AutomatonError):
    """Automaton file violates the format; `path` locates the offending entry."""

    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f"{path}: {reason}", {"path": path, "reason": reason})
        self.path = path
        self.reason = reason


# Groups


class GroupModelError(CadistError):
    """Group model error."""


class UnknownGeneratorError(GroupModelError):
    """Word contains a token that is not a generator."""

    def __init__(self, token: str, valid: list[str]) -> None:
        super().__init__(
            f"Unknown generator: {token!r}. Valid generators: {', '.join(valid)}",
            {"token": token},
        )
        self.token = token


class UnknownModelError(GroupModelError):
    """Model name not registered."""

    def __init__(self, name: str, valid: list[str]) -> None:
        super().__init__(
            f"Unknown model: {name}. Valid models: {', '.join(valid)}", {"model": name}
        )


# Budgets (CLI exit code 2)


class BudgetExceededError(CadistError):
    """A configured computation budget was exhausted."""


class DistanceCapExceededError(BudgetExceededError):
    """Distance is larger than the radius cap."""

    def __init__(self, radius_cap: int, word: str | None = None) -> None:
        msg = f"Distance exceeds radius cap {radius_cap}"
        details = {"radius_cap": str(radius_cap)}
        if word is not None:
            msg += f" (word {word!r})"
            details["word"] = word
        super().__init__(msg, details)
        self.radius_cap = radius_cap
        self.word = word


class BallBoundExceededError(BudgetExceededError):
    """Ball enumeration would exceed the safety bound."""

    def __init__(self, bound: int, radius: int) -> None:
        super().__init__(
            f"Ball of radius {radius} exceeds safety bound of {bound} elements",
            {"bound": str(bound), "radius": str(radius)},
        )


class EnumerationBudgetError(BudgetExceededError):
    """Language enumeration exceeded the word budget."""

    def __init__(self, budget: int) -> None:
        super().__init__(
            f"Enumeration exceeded budget of {budget} words", {"budget": str(budget)}
        )


class AreaExceedsMaxError(BudgetExceededError):
    """Word needs more relator applications than allowed."""

    def __init__(self, word: str, max_area: int) -> None:
        super().__init__(
            f"Area of {word!r} exceeds {max_area}", {"word": word, "max_area": str(max_area)}
        )
        self.max_area = max_area


# Structures


class StructureError(CadistError):
    """Cayley automatic structure error."""


class UnknownStructureError(StructureError):
    """Structure name not in the catalog and not a bundle file."""

    def __init__(self, name: str, valid: list[str]) -> None:
        super().__init__(
            f"Unknown structure: {name}. Valid structures: {', '.join(valid)}",
            {"structure": name},
        )


class MissingWordError(StructureError):
    """No word over the generators is known for a chosen symbol value."""

    def __init__(self, symbol: str) -> None:
        super().__init__(f"No word given for symbol {symbol!r}", {"symbol": symbol})


class TransportError(StructureError):
    """Generating-set transport preconditions fail."""


class MultiplierRejectsError(StructureError):
    """A multiplier rejects a pair it must accept."""

    def __init__(self, generator: str, u: str, v: str) -> None:
        super().__init__(
            f"Multiplier for {generator!r} rejects ({u!r}, {v!r})",
            {"generator": generator, "u": u, "v": v},
        )


# Filling


class FillingError(CadistError):
    """Filling construction error."""


class NotALoopError(FillingError):
    """Word does not evaluate to the identity."""

    def __init__(self, word: str) -> None:
        super().__init__(f"Not a loop: {word!r}", {"word": word})


class InvalidStepFunctionError(FillingError):
    """Breakpoints are empty or not strictly increasing."""

    def __init__(self, lengths: list[int]) -> None:
        super().__init__(
            f"Breakpoints must be nonempty and strictly increasing: {lengths}",
            {"lengths": ",".join(map(str, lengths))},
        )


# Growth


class GrowthError(CadistError):
    """Function-order calculus error."""


class ParameterRangeError(GrowthError):
    """Parameter value out of its allowed range."""

    def __init__(self, param_name: str, value: int | float | str, constraint: str) -> None:
        super().__init__(
            f"Invalid {param_name}: {value} ({constraint})",
            {"param_name": param_name, "value": str(value)},
        )


class DomainShortfallError(GrowthError):
    """Function is not defined on the requested range."""


class InsufficientRangeError(GrowthError):
    """Profiles do not cover the requested comparison range."""
