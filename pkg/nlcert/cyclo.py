'''
Exact arithmetic over the cyclotomic rationals a + b*w

w is the primitive cube root of unity exp(2*pi*i/3), so w**2 = -1 - w and
every product reduces back to the (a, b) form.
'''

# Python imports
from fractions import Fraction
import math


SQRT3_2 = math.sqrt(3) / 2


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError('cannot coerce %r to a rational' % (x,))


class CycloRational(object):
    '''
    Value a + b*w with rational a, b (reduced fractions, so equality is
    structural)
    '''

    __slots__ = ('a', 'b')

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, CycloRational):
            return x
        return cls(x, 0)

    @classmethod
    def root(cls, k):
        '''
        w**k
        '''

        k %= 3
        if k == 0:
            return cls(1, 0)
        if k == 1:
            return cls(0, 1)
        return cls(-1, -1)

    def __repr__(self):
        return 'CycloRational(%s, %s)' % (self.a, self.b)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return '%sw' % (self.b,)
        return '%s%s%sw' % (self.a, '+' if self.b > 0 else '-', abs(self.b))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, CycloRational):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __ne__(self, other):
        res = self.__eq__(other)
        if res is NotImplemented:
            return res
        return not res

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloRational(self.a + other, self.b)
        if isinstance(other, CycloRational):
            return CycloRational(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return CycloRational(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycloRational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloRational(self.a * other, self.b * other)
        if isinstance(other, CycloRational):
            return cy_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self):
        return cy_conj(self)

    def norm(self):
        '''
        x * conj(x) = a^2 - ab + b^2, always a nonnegative rational
        '''

        return self.a * self.a - self.a * self.b + self.b * self.b

    def inv(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError('inverse of zero')
        c = self.conj()
        return CycloRational(c.a / n, c.b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError('division by zero')
            return CycloRational(self.a / other, self.b / other)
        if isinstance(other, CycloRational):
            return cy_mul(self, other.inv())
        return NotImplemented

    def __rtruediv__(self, other):
        return CycloRational.coerce(other) * self.inv()

    def __complex__(self):
        return cy_to_float(self)

    def to_dict(self):
        return {'a': str(self.a), 'b': str(self.b)}

    @classmethod
    def from_dict(cls, d):
        return cls(Fraction(d['a']), Fraction(d['b']))


def cy_mul(x, y):
    # w^2 = -1 - w
    a1, b1, a2, b2 = x.a, x.b, y.a, y.b
    bb = b1 * b2
    return CycloRational(a1 * a2 - bb, a1 * b2 + a2 * b1 - bb)


def cy_conj(x):
    # conj(w) = w^2 = -1 - w
    return CycloRational(x.a - x.b, -x.b)


def cy_to_float(x):
    b = float(x.b)
    return complex(float(x.a) - 0.5 * b, SQRT3_2 * b)


ZERO = CycloRational(0, 0)
ONE = CycloRational(1, 0)
OMEGA = CycloRational(0, 1)
OMEGA2 = CycloRational(-1, -1)
