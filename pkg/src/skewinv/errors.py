"""Exception types raised across the package."""


class SkewInvError(Exception):
    """Base class for all library errors."""


class NonHomogeneous(SkewInvError, ValueError):
    pass


class ZeroPolynomial(SkewInvError, ValueError):
    pass


class BadPrime(SkewInvError, ValueError):
    pass


class BadLength(SkewInvError, ValueError):
    pass


class BadT(SkewInvError, ValueError):
    pass


class SizeMismatch(SkewInvError, ValueError):
    pass


class DegreeBoundExceeded(SkewInvError, ValueError):
    pass


class MixedMultidegree(SkewInvError, ValueError):
    pass


class BadSize(SkewInvError, ValueError):
    pass


class UnsupportedSize(SkewInvError, ValueError):
    pass


class UnsupportedCase(SkewInvError, ValueError):
    pass


class MalformedCertificate(SkewInvError, ValueError):
    pass
