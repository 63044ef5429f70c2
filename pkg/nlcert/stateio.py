'''
State-set files: UTF-8 JSON with one ket expression per party and state
'''

# Python imports
import json

# nlcert imports
from .common import SpaceError
from .model import ProductState, SpaceSpec, StateSet
from .parser import ParseError, parse_ket, print_ket


SCHEMA = 1
FIELD = 'cyclo-rational'


def set_to_dict(stateset):
    states = []
    for s in stateset:
        d = {'label': s.label,
             'factors': {f.party: print_ket(f) for f in s.factors}}
        if s.parent is not None:
            d['parent'] = s.parent
        states.append(d)
    return {'schema': SCHEMA, 'field': FIELD,
            'space': stateset.space.to_dict(), 'states': states,
            'meta': stateset.meta}


def _check(cond, msg, *args):
    if not cond:
        raise ParseError(msg % args)


def _state_from_dict(sd, space):
    _check(isinstance(sd, dict), 'state entries must be JSON objects')
    label = sd.get('label')
    _check(isinstance(label, str), 'state label must be a string')
    factors = sd.get('factors')
    _check(isinstance(factors, dict), "state '%s': factors must be an object",
           label)
    kets = []
    for p in space:
        text = factors.get(p.label)
        _check(isinstance(text, str), "state '%s': factor %s must be a string",
               label, p.label)
        try:
            kets.append(parse_ket(text, p.dim, p.label))
        except ParseError as ex:
            raise ParseError("state '%s': %s" % (label, ex), ex.pos)
    parent = sd.get('parent')
    _check(parent is None or isinstance(parent, str),
           "state '%s': parent must be a string", label)
    return ProductState(label, kets, parent=parent)


def dict_to_set(d):
    '''
    Inverse of set_to_dict; every failure surfaces as ParseError
    '''

    _check(isinstance(d, dict), 'state file must hold a JSON object')
    _check(d.get('schema') == SCHEMA, 'unsupported state file schema %r',
           d.get('schema'))
    _check(d.get('field', FIELD) == FIELD,
           "unsupported coefficient field '%s'", d.get('field'))
    space, states, meta = d.get('space'), d.get('states'), d.get('meta')
    _check(isinstance(space, dict) and isinstance(space.get('parties'), list),
           'state file lacks a space with a parties list')
    _check(all(isinstance(p, dict) for p in space['parties']),
           'space parties must be JSON objects')
    _check(isinstance(states, list), 'state file lacks a states list')
    _check(meta is None or isinstance(meta, dict), 'meta must be an object')
    try:
        space = SpaceSpec.from_dict(space)
        return StateSet(space, [_state_from_dict(sd, space) for sd in states],
                        meta=meta)
    except KeyError as ex:
        raise ParseError('state file lacks field %s' % (ex,))
    except SpaceError as ex:
        raise ParseError('inconsistent state file: %s' % (ex,))
    except (TypeError, AttributeError) as ex:
        raise ParseError('malformed state file: %s' % (ex,))


def read_set(path):
    with open(path, encoding='utf-8') as f:
        try:
            data = json.load(f)
        except ValueError as ex:
            raise ParseError("cannot read state file '%s': %s" % (path, ex))
    return dict_to_set(data)


def write_set(stateset, path, indent=2):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(set_to_dict(stateset), f, indent=indent, ensure_ascii=False)
        f.write('\n')
