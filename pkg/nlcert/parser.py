'''
Ket expression parser and printer

  expr  := term (('+'|'-') term)*      (leading sign allowed)
  term  := coeff? ket
  coeff := integer | p/q | w | w^2 | integer w | integer w^2 | p/q w | p/q w^2
  ket   := |i> | |+_n> | |_m+_n>
'''

# Python imports
from fractions import Fraction
from functools import lru_cache

# External libs
from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

# nlcert imports
from .cyclo import CycloRational, cy_mul
from .model import LocalVector


class ParseError(Exception):
    '''
    Exception denoting that a ket expression, measurement literal or data
    file cannot be parsed.
    '''

    def __init__(self, msg, pos=None):
        super(ParseError, self).__init__(msg)
        self.pos = pos


KET_GRAMMAR = r"""

start: first_term (SIGN term)*

first_term: SIGN? term

term: coeff? ket

coeff: INT "/" INT OMEGA?     -> rational
     | INT OMEGA?             -> integer
     | OMEGA                  -> omega

ket: "|" INT ">"              -> basis
   | "|+_" INT ">"            -> plus
   | "|_" INT "+_" INT ">"    -> range_plus

SIGN: "+" | "-"
OMEGA: /w(\^2)?/

%import common.INT
%import common.WS

%ignore WS
"""


def _omega_power(tok):
    if tok is None:
        return CycloRational(1)
    return CycloRational.root(2 if str(tok) == 'w^2' else 1)


@v_args(inline=True)
class KetTree(Transformer):
    '''
    Turns the parse tree into a dict index -> coefficient
    '''

    def __init__(self, dim):
        super(KetTree, self).__init__()
        self.dim = dim

    def _index(self, tok):
        i = int(tok)
        if i >= self.dim:
            raise ParseError('index %d out of range for dim %d'
                             % (i, self.dim), getattr(tok, 'column', None))
        return i

    def start(self, first, *rest):
        acc = {}
        terms = [(1, first)]
        for sign, term in zip(rest[0::2], rest[1::2]):
            terms.append((-1 if str(sign) == '-' else 1, term))
        for sign, (coeff, indices) in terms:
            c = coeff * sign
            for i in indices:
                acc[i] = acc.get(i, CycloRational(0)) + c
        return acc

    def first_term(self, *args):
        if len(args) == 2:
            sign, (coeff, indices) = args
            if str(sign) == '-':
                coeff = -coeff
            return (coeff, indices)
        return args[0]

    def term(self, *args):
        if len(args) == 2:
            return args
        return (CycloRational(1), args[0])

    def rational(self, p, q, w=None):
        if int(q) == 0:
            raise ParseError('zero denominator in %s/%s' % (p, q),
                             getattr(q, 'column', None))
        return cy_mul(CycloRational(Fraction(int(p), int(q))), _omega_power(w))

    def integer(self, n, w=None):
        return cy_mul(CycloRational(int(n)), _omega_power(w))

    def omega(self, w):
        return _omega_power(w)

    def basis(self, i):
        return [self._index(i)]

    def plus(self, n):
        return list(range(self._index(n) + 1))

    def range_plus(self, m, n):
        lo, hi = int(m), self._index(n)
        if lo >= hi:
            raise ParseError('empty range |_%d+_%d>' % (lo, hi),
                             getattr(m, 'column', None))
        return list(range(lo, hi + 1))


@lru_cache(maxsize=None)
def ket_parser():
    '''
    One parser instance per process
    '''

    return Lark(KET_GRAMMAR, parser='lalr')


def parse_ket(text, dim, party='A'):
    '''
    Parses `text` into a LocalVector of dimension `dim`
    '''

    if text is None or not text.strip():
        raise ParseError('empty expression')
    try:
        tree = ket_parser().parse(text)
    except UnexpectedInput as ex:
        raise ParseError("malformed ket expression '%s' at column %s"
                         % (text, getattr(ex, 'column', '?')),
                         getattr(ex, 'column', None))
    try:
        entries = KetTree(dim).transform(tree)
    except VisitError as ex:
        if isinstance(ex.orig_exc, ParseError):
            raise ex.orig_exc
        raise
    return LocalVector(party, dim, entries)


def _split_coeff(c):
    '''
    Splits a + b*w into printable (rational, suffix) pieces
    '''

    if c.b == 0:
        return [(c.a, '')]
    if c.a == 0:
        return [(c.b, 'w')]
    if c.a == c.b:
        # a + a*w = -a*w^2
        return [(-c.a, 'w^2')]
    return [(c.a, ''), (c.b, 'w')]


def _compact(v):
    sup = v.support()
    if len(sup) < 3 or sup[-1] - sup[0] != len(sup) - 1:
        return None
    if any(v[i] != 1 for i in sup):
        return None
    if sup[0] == 0:
        return '|+_%d>' % (sup[-1],)
    return '|_%d+_%d>' % (sup[0], sup[-1])


def print_ket(v):
    '''
    Prints a LocalVector in the ket grammar (inverse of parse_ket)
    '''

    if v.is_zero():
        return '0'
    compact = _compact(v)
    if compact:
        return compact

    out = []
    for i in v.support():
        for r, suffix in _split_coeff(v[i]):
            mag = abs(r)
            magstr = '' if mag == 1 else str(mag)
            sign = '-' if r < 0 else '+'
            if not out and sign == '+':
                sign = ''
            out.append('%s%s%s|%d>' % (sign, magstr, suffix, i))
    return ''.join(out)
