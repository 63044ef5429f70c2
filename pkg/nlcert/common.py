'''
Common utilities used accross modules
'''

# Python imports
import sys
from configparser import ConfigParser


class SpaceError(Exception):
    '''
    Signals an invalid space: bad dims, duplicate or unknown party labels,
    states on mismatched spaces or an invalid restriction.
    '''


class NotSupported(Exception):
    '''
    Signals a feature present in the data model but not in the executor.
    '''

    def __init__(self, msg, what=None):
        super(NotSupported, self).__init__(msg)
        self.what = what


DEBUG_DEST = sys.stderr
ERROR_DEST = sys.stderr


def debug(msg, *args):
    if args:
        msg %= tuple(args)
    print('[debug] %s' % (msg,), file=DEBUG_DEST)


def error(msg, *args):
    if args:
        msg %= tuple(args)
    print('[error] %s' % (msg,), file=ERROR_DEST)


DEFAULTS = {
    'solver': {'rtol': '1e-9', 'identity_tol': '1e-8'},
    'certify': {'processes': '1'},
    'report': {'indent': '2'},
    'render': {'cell': '0.5'},
}


def load_config(path=None):
    '''
    Reads an INI file on top of the built-in defaults
    '''

    cf = ConfigParser()
    cf.read_dict(DEFAULTS)
    if path:
        with open(path, encoding='utf-8') as f:
            cf.read_file(f)
    return cf


def get_int_option(cf, section, option, default=None):
    '''
    Safe (int) option getter with default value
    '''

    if cf.has_option(section, option):
        return cf.getint(section, option)
    else:
        return default


def get_float_option(cf, section, option, default=None):
    '''
    Safe (float) option getter with default value
    '''

    if cf.has_option(section, option):
        return cf.getfloat(section, option)
    else:
        return default


def parseargs(argvs, flags=('json', 'verbose')):
    '''
    Simple argument parser

    `--opt value` is an option, `-flag` (or `--flag` for names in `flags`)
    is a boolean switch, everything else is positional.
    '''

    args = []
    kwargs = {}

    nextopt = None

    for arg in argvs:
        if nextopt:
            kwargs[nextopt] = arg
            nextopt = None

        elif arg.startswith('--'):
            if arg[2:] in flags:
                kwargs[arg[2:]] = True
            else:
                nextopt = arg[2:]

        elif arg.startswith('-') and len(arg) > 1:
            kwargs[arg[1:]] = True

        else:
            args.append(arg)

    if nextopt:
        raise ValueError("option '--%s' expects a value" % (nextopt,))

    return args, kwargs


def smallest_prime_factor(n):
    assert n >= 2, 'no prime factor of %d' % (n,)
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def factorize(n):
    '''
    Prime factors of `n` in increasing order (with multiplicity)
    '''

    factors = []
    while n > 1:
        p = smallest_prime_factor(n)
        factors.append(p)
        n //= p
    return factors


def parse_index_group(text, dim=None):
    '''
    Parses "0-4" or "0,2,5-7" into a sorted tuple of indices
    '''

    indices = set()
    for part in text.split(','):
        part = part.strip()
        if not part:
            raise ValueError("empty index in '%s'" % (text,))
        if '-' in part:
            lo, hi = part.split('-', 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError("bad range '%s'" % (part,))
            indices.update(range(lo, hi + 1))
        else:
            indices.add(int(part))
    if dim is not None:
        for i in indices:
            if i < 0 or i >= dim:
                raise ValueError('index %d out of range [0, %d)' % (i, dim))
    return tuple(sorted(indices))


def format_index_group(indices):
    '''
    Inverse of parse_index_group, using ranges for runs of three or more
    '''

    indices = sorted(indices)
    parts = []
    i = 0
    while i < len(indices):
        j = i
        while j + 1 < len(indices) and indices[j + 1] == indices[j] + 1:
            j += 1
        if j > i + 1:
            parts.append('%d-%d' % (indices[i], indices[j]))
        else:
            parts.extend('%d' % (k,) for k in indices[i:j + 1])
        i = j + 1
    return ','.join(parts)
