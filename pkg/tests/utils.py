import os

from nlcert.model import ProductState, SpaceSpec, StateSet
from nlcert.parser import parse_ket
from nlcert.protocols import read_protocol
from nlcert.stateio import read_set

dir_path = os.path.dirname(os.path.realpath(__file__))

def get_full_data_filename(f, reldir='data'):
    """
    Gets the full path to the data file `f`.
    """
    return os.path.join(dir_path, reldir, f)

def load_states(fname):
    """
    Reads the shipped state file `fname` from data/states.
    """
    return read_set(get_full_data_filename(fname, reldir='data/states'))

def load_protocol(fname):
    """
    Reads the shipped protocol file `fname` from data/protocols.
    """
    return read_protocol(get_full_data_filename(fname, reldir='data/protocols'))

def factor_map(stateset):
    """
    Maps each state label to its tuple of factors (order-insensitive
    comparison of two sets).
    """
    return {s.label: s.factors for s in stateset}

def make_set(listing, dims, parties=('A', 'B')):
    """
    Builds a StateSet from (label, kets) pairs, one ket string per party.
    """
    space = SpaceSpec(list(zip(parties, dims)))
    return StateSet(space, [
        ProductState(label, [parse_ket(k, d, p)
                             for k, d, p in zip(kets, dims, parties)])
        for label, kets in listing])

def permuted(stateset, order, perms):
    """
    The states in `order`, with party i's basis relabeled by perms[i].
    """
    return StateSet(stateset.space, [
        ProductState(s.label, [f.permute(p) for f, p in zip(s.factors, perms)],
                     parent=s.parent)
        for s in (stateset[k] for k in order)])
