# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
Command-line front end.

    hornbody table   --s 1/4 --r 1/2
    hornbody certify --s 1/2 --r 1/2
    hornbody probe   --s 1/2 --r-sweep 99 -o gaps.csv --format csv
    hornbody probe   --s 1/2 --target image --t 0.3
    hornbody sample  --s 1/2 --d 2 --count 50 -o cloud.jsonl
    hornbody fit     --s 1/2 --input cloud.jsonl -o fit.csv --format csv

Exit codes: 0 success (or certified), 2 usage error, 3 inconclusive
certificate, 4 optimizer budget exhausted (results still written,
flagged converged=false).
'''
import csv
import io
import sys
from fractions import Fraction

from hornbody.util.config import get_config, ConfigError
from hornbody.util.file import json_dumps, write_file
from hornbody.util.log import loginfo, logdebug, logwarn, setup_logging
from hornbody.util.multiproc import threads_from_env
from hornbody.util.ttime import Time

COMMANDS = ['table', 'certify', 'probe', 'sample', 'fit']
FORMATS = ['json', 'csv']
TARGETS = ['sigma', 'image']

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_BUDGET = 4

class UsageError(ValueError):
    pass

def parse_rational(text, name='value'):
    '''
    "p/q" (q > 0), an integer or a decimal string -> Fraction.
    '''
    if text is None:
        raise ValueError('missing --%s' % name)
    try:
        x = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError('--%s: cannot parse %r as a rational number' % (name, text))
    return x

class RunConfig(object):
    '''
    The validated settings of one command.
    '''
    def __init__(self, command, s=None, r=None, t=None, d=2, count=50, seed=42,
                 t_grid=401, x_grid=4096, r_sweep=99, method='lp', max_iter=10000,
                 scan_grid=1001, scan_tol=1e-9, threads=1, target='sigma',
                 output_path=None, input_path=None, format='json'):
        if not command in COMMANDS:
            raise ValueError('unknown command %r; expected one of %s' %
                             (command, ', '.join(COMMANDS)))
        if t_grid < 2 or x_grid < 2:
            raise ValueError('grids need at least 2 points (t_grid=%i, x_grid=%i)' %
                             (t_grid, x_grid))
        if count < 1:
            raise ValueError('count must be at least 1, got %i' % count)
        if d < 1:
            raise ValueError('d must be at least 1, got %i' % d)
        if r_sweep < 1:
            raise ValueError('r-sweep must be at least 1, got %i' % r_sweep)
        if not format in FORMATS:
            raise ValueError('unknown format %r; expected one of %s' %
                             (format, ', '.join(FORMATS)))
        if not target in TARGETS:
            raise ValueError('unknown target %r; expected one of %s' %
                             (target, ', '.join(TARGETS)))
        if not method in ['lp', 'subgradient']:
            raise ValueError('unknown method %r' % method)
        self.command = command
        self.s = s
        self.r = r
        self.t = t
        self.d = d
        self.count = count
        self.seed = seed
        self.t_grid = t_grid
        self.x_grid = x_grid
        self.r_sweep = r_sweep
        self.method = method
        self.max_iter = max_iter
        self.scan_grid = scan_grid
        self.scan_tol = scan_tol
        self.threads = threads
        self.target = target
        self.output_path = output_path
        self.input_path = input_path
        self.format = format

    def gap_args(self):
        return dict(t_grid=self.t_grid, x_grid=self.x_grid, method=self.method,
                    max_iter=self.max_iter)

def _check_unit_open(name, x):
    if not (0 < x < 1):
        raise ValueError('--%s must lie in (0,1), got %s' % (name, x))

def _check_unit_closed(name, x):
    if not (0 <= x <= 1):
        raise ValueError('--%s must lie in [0,1], got %s' % (name, x))

def _csv_text(header, rows):
    out = io.StringIO()
    wr = csv.writer(out, lineterminator='\n')
    wr.writerow(header)
    for row in rows:
        wr.writerow(row)
    return out.getvalue()

def emit(text, conf):
    if conf.output_path:
        write_file(text, conf.output_path)
        loginfo('Wrote', conf.output_path)
    else:
        sys.stdout.write(text)

def run_table(conf):
    from hornbody.horn.counterexample import table1_csv, table1_dict
    if conf.format == 'csv':
        text = table1_csv(conf.s, conf.r)
    else:
        text = json_dumps(table1_dict(conf.s, conf.r)) + '\n'
    emit(text, conf)
    return EXIT_OK

def run_certify(conf):
    from hornbody.certalg.certalg import certify, INCONCLUSIVE
    cert = certify(conf.s, conf.r)
    d = cert.to_dict()
    if conf.format == 'csv':
        keys = ['s', 'r', 'verdict', 'resultant_value', 'eliminant_value']
        text = _csv_text(keys, [[d[k] for k in keys]])
    else:
        text = json_dumps(d) + '\n'
    emit(text, conf)
    loginfo('s = %s, r = %s: %s' % (cert.s, cert.r, cert.verdict))
    if cert.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK

def run_probe(conf):
    from hornbody.horn.counterexample import (CounterexampleParams, sigma_gap, nu_t,
                                              membership_gap, r_sweep, sweep_sigma_gaps,
                                              support_scan)
    kw = conf.gap_args()
    extra = {}
    if conf.target == 'image':
        rep = membership_gap(conf.s, nu_t(conf.s, conf.t), **kw)
        reps = [rep]
    elif conf.r is not None:
        params = CounterexampleParams(conf.s, conf.r)
        rep = sigma_gap(params, **kw)
        reps = [rep]
        extra['support_scan'] = [float(t) for t in
                                 support_scan(params, t_grid=conf.scan_grid,
                                              tol=conf.scan_tol)]
    else:
        rs = r_sweep(conf.r_sweep)
        reps = sweep_sigma_gaps(conf.s, rs, nthreads=conf.threads, **kw)
        loginfo('Max gap over', len(rs), 'r values:', max(rep.gap for rep in reps))

    if conf.format == 'csv':
        rows = [[('' if rep.r is None else str(rep.r)), repr(float(rep.gap)),
                 int(rep.converged)] for rep in reps]
        text = _csv_text(['r', 'gap', 'converged'], rows)
    else:
        d = dict(reports=[rep.to_dict() for rep in reps],
                 max_gap=max(float(rep.gap) for rep in reps))
        d.update(extra)
        text = json_dumps(d) + '\n'
    emit(text, conf)
    if not all(rep.converged for rep in reps):
        logwarn('Optimizer budget exhausted for', sum(not rep.converged for rep in reps),
                'of', len(reps), 'targets')
        return EXIT_BUDGET
    return EXIT_OK

def _sample(conf):
    from hornbody.horn.hornbody import counterexample_spec, sample_cloud
    spec = counterexample_spec(conf.s, conf.d)
    return sample_cloud(spec, conf.count, conf.seed, nthreads=conf.threads)

def run_sample(conf):
    cloud = _sample(conf)
    if conf.format == 'csv':
        rows = [[i, sd] + [repr(float(x)) for x in sp]
                for i,(sd,sp) in enumerate(zip(cloud.seeds, cloud.spectra))]
        n = cloud.spec.dim()
        text = _csv_text(['index', 'seed'] + ['eig%i' % i for i in range(n)], rows)
    else:
        text = ''.join(json_dumps(rec) + '\n' for rec in cloud.to_records())
    emit(text, conf)
    return EXIT_OK

def run_fit(conf):
    from hornbody.horn.hornbody import BodyCloud, cloud_vs_phi_reports
    if conf.input_path:
        try:
            cloud = BodyCloud.read_jsonl(conf.input_path)
        except (ValueError, KeyError, OSError) as e:
            raise UsageError('cannot read cloud %s: %s' % (conf.input_path, e))
        loginfo('Read', len(cloud), 'points from', conf.input_path)
        if not cloud.spec.is_counterexample(conf.s):
            raise UsageError('%s was not sampled from the counterexample spec for s=%s' %
                             (conf.input_path, conf.s))
    else:
        cloud = _sample(conf)
    reps = cloud_vs_phi_reports(cloud, conf.s, nthreads=conf.threads, **conf.gap_args())
    if conf.format == 'csv':
        rows = [[i, sd, repr(float(rep.gap)), int(rep.converged)]
                for i,(sd,rep) in enumerate(zip(cloud.seeds, reps))]
        text = _csv_text(['index', 'seed', 'gap', 'converged'], rows)
    else:
        recs = []
        for i,(sd,rep) in enumerate(zip(cloud.seeds, reps)):
            d = rep.to_dict()
            d.update(index=i, seed=sd)
            recs.append(d)
        text = json_dumps(dict(points=recs)) + '\n'
    emit(text, conf)
    if len(reps):
        loginfo('Max gap over', len(reps), 'points:', max(rep.gap for rep in reps))
    if not all(rep.converged for rep in reps):
        return EXIT_BUDGET
    return EXIT_OK

RUNNERS = dict(table=run_table, certify=run_certify, probe=run_probe,
               sample=run_sample, fit=run_fit)

def build_parser(cfg):
    from optparse import OptionParser
    parser = OptionParser(usage='%prog <' + '|'.join(COMMANDS) + '> [options]')
    parser.add_option('--s', dest='s', help='coefficient parameter s, as p/q')
    parser.add_option('--r', dest='r', help='combination parameter r, as p/q')
    parser.add_option('--t', dest='t', help='block parameter t of an image target')
    parser.add_option('--target', dest='target', default='sigma',
                      help='probe target: sigma (default) or image')
    parser.add_option('--d', dest='d', type=int, default=cfg['d'],
                      help='multiplicity d of sampled points (default %default)')
    parser.add_option('--count', dest='count', type=int, default=cfg['count'],
                      help='number of points to sample (default %default)')
    parser.add_option('--seed', dest='seed', type=int, default=cfg['seed'],
                      help='master random seed (default %default)')
    parser.add_option('--t-grid', dest='t_grid', type=int, default=cfg['t_grid'],
                      help='uniform t nodes of the membership program (default %default)')
    parser.add_option('--x-grid', dest='x_grid', type=int, default=cfg['x_grid'],
                      help='x-grid points on [-2,2] (default %default)')
    parser.add_option('--r-sweep', dest='r_sweep', type=int, default=cfg['r_sweep'],
                      help='number of interior r values to probe (default %default)')
    parser.add_option('--method', dest='method', default=cfg['gap_method'],
                      help='membership optimizer: lp or subgradient (default %default)')
    parser.add_option('--max-iter', dest='max_iter', type=int, default=cfg['max_iter'],
                      help='iteration budget of the subgradient method (default %default)')
    parser.add_option('--input', dest='input', metavar='FILE',
                      help='fit: read the cloud from this JSON-lines FILE')
    parser.add_option('-o', '--output', dest='output', metavar='FILE',
                      help='write the result to FILE (default: stdout)')
    parser.add_option('--format', dest='format', default='json',
                      help='output format: json or csv (default %default)')
    parser.add_option('--threads', dest='threads', type=int, default=cfg['threads'],
                      help='worker processes (default %default)')
    parser.add_option('-v', '--verbose', dest='verbose', action='store_true',
                      help='be chatty')
    return parser

def config_from_options(command, opt, cfg):
    r = t = None
    s = parse_rational(opt.s, 's')
    if command in ['table', 'certify'] or opt.r is not None:
        r = parse_rational(opt.r, 'r')
    if command == 'certify':
        _check_unit_open('s', s)
        _check_unit_open('r', r)
    else:
        _check_unit_closed('s', s)
        if r is not None:
            _check_unit_open('r', r)
    if command == 'probe' and opt.target == 'image':
        t = parse_rational(opt.t, 't')
        _check_unit_closed('t', t)
    if opt.threads < 1:
        raise ValueError('--threads must be positive, got %i' % opt.threads)
    return RunConfig(command, s=s, r=r, t=t, d=opt.d, count=opt.count, seed=opt.seed,
                     t_grid=opt.t_grid, x_grid=opt.x_grid, r_sweep=opt.r_sweep,
                     method=opt.method, max_iter=opt.max_iter,
                     scan_grid=cfg['scan_grid'], scan_tol=cfg['scan_tol'],
                     threads=threads_from_env(opt.threads), target=opt.target,
                     output_path=opt.output, input_path=opt.input, format=opt.format)

def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = get_config()
    except (ConfigError, ValueError) as e:
        from optparse import OptionParser
        OptionParser().error(str(e))
    parser = build_parser(cfg)
    opt,args = parser.parse_args(argv)
    if len(args) != 1 or not args[0] in COMMANDS:
        parser.error('expected exactly one command: ' + ', '.join(COMMANDS))
    command = args[0]
    try:
        conf = config_from_options(command, opt, cfg)
    except ValueError as e:
        parser.error(str(e))

    setup_logging(opt.verbose)
    logdebug('Command', command, 'with', vars(conf))
    t0 = Time()
    try:
        rtn = RUNNERS[command](conf)
    except UsageError as e:
        parser.error(str(e))
    loginfo(command, 'finished:', Time() - t0)
    return rtn

if __name__ == '__main__':
    sys.exit(main())
