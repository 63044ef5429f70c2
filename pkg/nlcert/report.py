'''
Reproduction pipelines and their reports
'''

# Python imports
import json
import time

# nlcert imports
from .certify import (Classifier, NOT_ESTABLISHED, STRONG_TYPE_I, TYPE_I,
                      TYPE_II)
from .families import construct
from .measurement import parse_measurement
from .protocols import builtin_protocol


class UnknownPipeline(Exception):
    '''
    Signals an unknown reproduction target.
    '''


class Pipeline(object):
    '''
    A family with its shipped measurement, protocol and witnesses, and the
    verdict claimed for it
    '''

    def __init__(self, name, family, expected, claim):
        self.name = name
        self.family = family
        self.expected = expected
        self.claim = claim

    def run(self, verbose=False, processes=1, rtol=1e-9, identity_tol=1e-8):
        start = time.time()
        stateset = construct(self.family)
        built = time.time() - start

        measurements = [parse_measurement(lit)
                        for lit in stateset.getmeta('measurement')]
        protocol = builtin_protocol(self.family)
        C = Classifier(verbose=verbose, processes=processes, rtol=rtol,
                       identity_tol=identity_tol)
        res = C.classify(stateset, measurements, protocol,
                         stateset.getmeta('witnesses'))
        timings = {'construct': built}
        timings.update(C.timings)
        return Report(self, res, timings)


class Report(object):

    def __init__(self, pipeline, classification, timings):
        self.pipeline = pipeline
        self.classification = classification
        self.timings = timings

    @property
    def verdict(self):
        return self.classification.verdict

    def matches(self):
        return self.verdict == self.pipeline.expected

    def cardinalities(self):
        return [o['cardinality']
                for o in self.classification.evidence.get('outcomes', [])]

    def witness_sizes(self):
        return [len(o['indistinguishability'].witness)
                for o in self.classification.evidence.get('outcomes', [])]

    def to_dict(self):
        return {'pipeline': self.pipeline.name,
                'family': self.pipeline.family,
                'expected': self.pipeline.expected,
                'claim': self.pipeline.claim,
                'verdict': self.verdict, 'matches': self.matches(),
                'classification': self.classification.to_dict(),
                'timings': self.timings}

    def tojson(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    def tostring(self):
        lines = ['== %s (%s) ==' % (self.pipeline.name, self.pipeline.family),
                 'claimed: %s' % (self.pipeline.claim,),
                 'expected %s, got %s: %s' % (
                     self.pipeline.expected, self.verdict,
                     'match' if self.matches() else 'MISMATCH'),
                 'outcome cardinalities: %s' % (
                     ' '.join(map(str, self.cardinalities())),),
                 self.classification.tostring(),
                 'timings: %s' % (', '.join(
                     '%s %.2fs' % (k, v) for k, v in self.timings.items()),)]
        if self.verdict == NOT_ESTABLISHED:
            lines.append('(Unknown != disproven: the certifiers are '
                         'sufficient conditions)')
        return '\n'.join(lines)


PIPELINES = {}


def addpipeline(pipeline):
    PIPELINES[pipeline.name] = pipeline


def getpipeline(name):
    if name not in PIPELINES:
        raise UnknownPipeline("unknown pipeline '%s' (choose from %s)"
                              % (name, ', '.join(sorted(PIPELINES))))
    return PIPELINES[name]


def reproduce(name, **kwargs):
    return getpipeline(name).run(**kwargs)


addpipeline(Pipeline('example1', 'type1:11', TYPE_I,
                     'genuine hidden nonlocality of type I in C^11 x C^11'))
addpipeline(Pipeline('example2', 'type1:13', TYPE_I,
                     'genuine hidden nonlocality of type I in C^13 x C^13'))
addpipeline(Pipeline('example3', 'strong11', STRONG_TYPE_I,
                     'genuine hidden strong form nonlocality of type I'))
addpipeline(Pipeline('example4', 'type2-78', TYPE_II,
                     'genuine hidden nonlocality of type II in C^7 x C^8'))
addpipeline(Pipeline('multiparty', 'multi:11,11,13', TYPE_I,
                     '64-state six-party set with genuine hidden '
                     'nonlocality of type I'))
