"""Exception hierarchy.

Every domain error carries a ``kind`` (the class name) so the CLI can print
``error: <kind>: <detail>`` without a lookup table.
"""


class TexbenchError(ValueError):
    @property
    def kind(self) -> str:
        return type(self).__name__


# raster
class BadMagic(TexbenchError): pass
class UnsupportedMaxval(TexbenchError): pass
class Truncated(TexbenchError): pass
class MalformedHeader(TexbenchError): pass
class BadSize(TexbenchError): pass
class BadKind(TexbenchError): pass

# perturb
class BadDensity(TexbenchError): pass

# wavelet
class OddLength(TexbenchError): pass
class LengthMismatch(TexbenchError): pass
class OddDimension(TexbenchError): pass
class NotDivisible(TexbenchError): pass
class NotPowerOfTwo(TexbenchError): pass
class UnknownWavelet(TexbenchError): pass

# glcm
class BadLevels(TexbenchError): pass
class ZeroOffset(TexbenchError): pass
class OffsetTooLarge(TexbenchError): pass
class EmptyGlcm(TexbenchError): pass

# classify
class EmptySubband(TexbenchError): pass
class SchemeMismatch(TexbenchError): pass
class EmptyInput(TexbenchError): pass
class BadDatabase(TexbenchError): pass

# bench
class EmptyReport(TexbenchError): pass
class BadConfig(TexbenchError): pass
