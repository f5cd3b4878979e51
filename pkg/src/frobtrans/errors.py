"""Exception hierarchy.

Every error raised on purpose by the library derives from ``FrobError``;
the CLI renders the class name as the error code.
"""


class FrobError(Exception):
    pass


# field construction and arithmetic
class NonPrimeP(FrobError, ValueError):
    pass


class ReducibleModulus(FrobError, ValueError):
    pass


class DegreeMismatch(FrobError, ValueError):
    pass


class FieldTooLarge(FrobError, ValueError):
    pass


class NotPrimitive(FrobError, ValueError):
    pass


class DivisionByZero(FrobError, ZeroDivisionError):
    pass


class MixedFields(FrobError, TypeError):
    pass


class NonDivisorK(FrobError, ValueError):
    pass


class LogOfZero(FrobError, ValueError):
    pass


class ParseError(FrobError, ValueError):
    pass


# translators
class CodomainMismatch(FrobError, ValueError):
    pass


class MismatchedFrobeniusIndex(FrobError, ValueError):
    pass


class ZeroGamma(FrobError, ValueError):
    pass


class ScalarOutsideSubfield(FrobError, ValueError):
    pass


class OddCharacteristic(FrobError, ValueError):
    pass


class EvenCharacteristic(FrobError, ValueError):
    pass


class OddN(FrobError, ValueError):
    pass


class NNotFourK(FrobError, ValueError):
    pass


class NNotTwoK(FrobError, ValueError):
    pass


class BadL(FrobError, ValueError):
    pass


class NoSolution(FrobError, ValueError):
    pass


class NoTranslator(FrobError, ValueError):
    pass


class ConditionNotSatisfied(FrobError, ValueError):
    pass


class InternalInconsistency(FrobError, AssertionError):
    pass


class TheoremViolation(FrobError, AssertionError):
    pass


# permutations
class SingularMap(FrobError, ValueError):
    pass


class NotATranslator(FrobError, ValueError):
    pass


class ZeroB(FrobError, ValueError):
    pass


class ZeroA(FrobError, ValueError):
    pass


class NotAPermutationG(FrobError, ValueError):
    pass


class NotAPermutation(FrobError, ValueError):
    pass


class CompositionFailure(FrobError, AssertionError):
    pass


class NotDistinct(FrobError, ValueError):
    pass


class DeltaNotInS(FrobError, ValueError):
    pass


class OddS(FrobError, ValueError):
    pass


class NonzeroB(FrobError, ValueError):
    pass


class InvolutionFailure(FrobError, AssertionError):
    pass


# bent functions
class OddM(FrobError, ValueError):
    pass


class NotBent(FrobError, ValueError):
    pass


class AnConditionFailed(FrobError, ValueError):
    pass


class DualMismatch(FrobError, AssertionError):
    pass


class TranslatorPreconditionFailed(FrobError, ValueError):
    pass


class ZeroShift(FrobError, ValueError):
    pass


class PreconditionFailed(FrobError, ValueError):
    pass


class NotSelfDual(FrobError, AssertionError):
    pass


class TraceConditionFailed(FrobError, ValueError):
    pass


class InverseMismatch(FrobError, AssertionError):
    pass


# cli
class UnknownExample(FrobError, ValueError):
    pass


class UnknownParameters(FrobError, ValueError):
    pass
