'''
Command-line interface
'''

# Python imports
import json
import sys
import time

# nlcert imports
from .certify import (CertificationError, Classifier, NotOrthogonal,
                      OplmSolver, getcheck)
from .channels import ChannelError
from .common import (NotSupported, SpaceError, error, get_float_option,
                     get_int_option, load_config, parseargs)
from .families import UnknownFamily, construct, parse_family_id
from .measurement import (MeasurementError, parse_measurement,
                          product_outcomes)
from .parser import ParseError
from .protocols import ProtocolError, builtin_protocol, read_protocol
from .render import render_svg, render_text
from .report import PIPELINES, UnknownPipeline, reproduce
from .stateio import read_set, set_to_dict, write_set


USAGE = '''
nlcert COMMAND [ARGS] [OPTIONS]

Commands:
  construct FAMILY [--output FILE]
      FAMILY is yu:d, type1:d, strong11, type2-78 or multi:d1,d2,...
  certify CHECK FILE [--party P] [--witness a,b,...]
      CHECK is orthogonality, irredundancy, irreducibility,
      indistinguishability or oplm-dim
  measure FILE --measurement LIT --outcome ID [--output FILE]
      LIT like "B:0-4;5-10"; several literals separated by spaces measure
      together and take outcome ids like "1,2"
  classify FILE [--measurement LIT] [--protocol FILE] [--witness a,b;c,d]
      defaults come from the file's metadata
  reproduce NAME|all
      NAME is example1, example2, example3, example4 or multiparty
  render FILE [--format text|svg] [--output FILE]
  help

Options:
  --json            print JSON instead of text
  --verbose         debug output on stderr
  --config FILE     INI file with [solver], [certify], [report], [render]
  --processes N     pool size for per-outcome certification

Exit codes: 0 affirmative verdict, 1 negative or Unknown, 2 error.
'''

UNKNOWN_BANNER = 'Unknown != disproven: the certifiers are sufficient conditions'

ERRORS = (ParseError, SpaceError, UnknownFamily, MeasurementError,
          NotSupported, NotOrthogonal, CertificationError, ChannelError,
          ProtocolError, UnknownPipeline, IOError, ValueError)


class CommandError(Exception):
    '''
    Signals a bad command line.
    '''


class Nlcert(object):

    def __init__(self, argv, out=None):
        self.args, self.opts = parseargs(argv)
        self.out = out or sys.stdout

    def main(self):
        '''
        Runs the command; returns the exit code
        '''

        try:
            self.setup()
            if not self.args:
                raise CommandError('no command given')
            cmd = self.args[0].replace('-', '_')
            meth = getattr(self, 'cmd_%s' % (cmd,), None)
            if meth is None:
                raise CommandError("unknown command '%s'" % (self.args[0],))
            return meth(*self.args[1:])
        except CommandError as ex:
            error('%s', ex)
            self.write(USAGE)
            return 2
        except ERRORS as ex:
            error('%s', ex)
            return 2

    def setup(self):
        self.verbose = bool(self.opts.pop('verbose', False))
        self.json = bool(self.opts.pop('json', False))
        cf = load_config(self.opts.pop('config', None))
        self.rtol = get_float_option(cf, 'solver', 'rtol')
        self.identity_tol = get_float_option(cf, 'solver', 'identity_tol')
        self.processes = int(self.opts.pop(
            'processes', get_int_option(cf, 'certify', 'processes')))
        self.indent = get_int_option(cf, 'report', 'indent')
        self.cell = get_float_option(cf, 'render', 'cell')

    def write(self, text):
        print(text, file=self.out)

    def dump(self, obj):
        self.write(json.dumps(obj, indent=self.indent))

    def need(self, args, count, what):
        if len(args) < count:
            raise CommandError('missing %s' % (what,))

    def solver(self):
        return OplmSolver(verbose=self.verbose, rtol=self.rtol,
                          identity_tol=self.identity_tol)

    def cmd_help(self, *args):
        self.write(USAGE)
        return 0

    def cmd_construct(self, *args):
        self.need(args, 1, 'family id')
        stateset = construct(args[0])
        output = self.opts.get('output')
        if output:
            write_set(stateset, output, indent=self.indent)
            self.write('%s: %d states on %s -> %s' % (
                args[0], len(stateset), stateset.space, output))
        else:
            self.dump(set_to_dict(stateset))
        return 0

    def cmd_certify(self, *args):
        self.need(args, 2, 'check name and state file')
        check = getcheck(args[0])
        stateset = read_set(args[1])
        witness = self.opts.get('witness')
        if witness:
            witness = [w.strip() for w in witness.split(',') if w.strip()]
        res = check(stateset, party=self.opts.get('party'), witness=witness,
                    solver=self.solver())
        if self.json:
            self.dump(res.to_dict())
        else:
            self.write(res.tostring())
            if not res.passed:
                self.write(UNKNOWN_BANNER)
        return 0 if res.passed else 1

    def measurements(self, literals):
        return [parse_measurement(lit) for lit in literals.split()]

    def cmd_measure(self, *args):
        self.need(args, 1, 'state file')
        if 'measurement' not in self.opts or 'outcome' not in self.opts:
            raise CommandError('measure needs --measurement and --outcome')
        stateset = read_set(args[0])
        ms = self.measurements(self.opts['measurement'])
        want = self.opts['outcome']
        for outset in product_outcomes(stateset, ms):
            if outset.key() == want:
                break
        else:
            raise MeasurementError("no outcome '%s' of %s" % (
                want, self.opts['measurement']))

        res = outset.states
        output = self.opts.get('output')
        if output:
            write_set(res, output, indent=self.indent)
            self.write('outcome %s: %d states (dropped %s) -> %s' % (
                want, len(res), ', '.join(outset.dropped) or 'none', output))
        else:
            self.dump(set_to_dict(res))
        return 0

    def witnesses(self, text):
        res = {}
        for k, group in enumerate(text.split(';'), 1):
            labels = [w.strip() for w in group.split(',') if w.strip()]
            if labels:
                res[str(k)] = labels
        return res

    def cmd_classify(self, *args):
        self.need(args, 1, 'state file')
        stateset = read_set(args[0])

        if 'measurement' in self.opts:
            ms = self.measurements(self.opts['measurement'])
        elif stateset.getmeta('measurement'):
            ms = [parse_measurement(lit)
                  for lit in stateset.getmeta('measurement')]
        else:
            raise CommandError('classify needs --measurement')

        if 'protocol' in self.opts:
            protocol = read_protocol(self.opts['protocol'])
        elif stateset.getmeta('family'):
            protocol = builtin_protocol(parse_family_id(
                stateset.getmeta('family')))
        else:
            raise CommandError('classify needs --protocol')

        if 'witness' in self.opts:
            witnesses = self.witnesses(self.opts['witness'])
            if len(ms) > 1:
                # Positional groups follow the product outcome order
                keys = [o.key() for o in product_outcomes(stateset, ms)]
                witnesses = {keys[int(k) - 1]: v for k, v in witnesses.items()
                             if int(k) <= len(keys)}
        else:
            witnesses = stateset.getmeta('witnesses')

        start = time.time()
        C = Classifier(verbose=self.verbose, processes=self.processes,
                       rtol=self.rtol, identity_tol=self.identity_tol)
        res = C.classify(stateset, ms, protocol, witnesses)
        timings = dict(C.timings)
        timings['total'] = time.time() - start

        if self.json:
            d = res.to_dict()
            d['timings'] = timings
            self.dump(d)
        else:
            self.write(res.tostring())
            if not res.is_established():
                self.write(UNKNOWN_BANNER)
        return 0 if res.is_established() else 1

    def cmd_reproduce(self, *args):
        self.need(args, 1, 'pipeline name')
        names = sorted(PIPELINES) if args[0] == 'all' else [args[0]]
        reports = [reproduce(name, verbose=self.verbose,
                             processes=self.processes, rtol=self.rtol,
                             identity_tol=self.identity_tol)
                   for name in names]
        if self.json:
            self.dump([r.to_dict() for r in reports] if len(reports) > 1
                      else reports[0].to_dict())
        else:
            self.write('\n\n'.join(r.tostring() for r in reports))
        return 0 if all(r.matches() for r in reports) else 1

    def cmd_render(self, *args):
        self.need(args, 1, 'state file')
        stateset = read_set(args[0])
        fmt = self.opts.get('format', 'text')
        output = self.opts.get('output')
        if fmt == 'text':
            text = render_text(stateset)
            if output:
                with open(output, 'w', encoding='utf-8') as f:
                    f.write(text + '\n')
            else:
                self.write(text)
        elif fmt == 'svg':
            if not output:
                raise CommandError('svg rendering needs --output')
            render_svg(stateset, output, cell=self.cell)
        else:
            raise CommandError("unknown format '%s'" % (fmt,))
        return 0


def main(argv=None):
    return Nlcert(sys.argv[1:] if argv is None else argv).main()
