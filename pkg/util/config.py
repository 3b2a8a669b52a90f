# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
import os

from hornbody.util.log import logdebug
from hornbody.util.multiproc import threads_from_env

class ConfigError(Exception):
    pass

# key -> (type, built-in default)
DEFAULTS = dict(
    t_grid = (int, 401),
    x_grid = (int, 4096),
    scan_grid = (int, 1001),
    scan_tol = (float, 1e-9),
    gap_method = (str, 'lp'),
    max_iter = (int, 10000),
    threads = (int, 1),
    seed = (int, 42),
    count = (int, 50),
    d = (int, 2),
    r_sweep = (int, 99),
    )

def default_config():
    return dict([(k, v) for k,(t,v) in DEFAULTS.items()])

def read_config(fn):
    '''
    Reads a "key value" config file (see etc/hornbody.cfg) into a dict,
    starting from the built-in defaults.
    '''
    cfg = default_config()
    with open(fn, encoding='utf-8') as f:
        for i,line in enumerate(f):
            line = line.split('#', 1)[0].strip()
            if not len(line):
                continue
            words = line.split()
            if len(words) != 2:
                raise ConfigError('%s line %i: expected "key value", got %r' %
                                  (fn, i+1, line))
            key,val = words
            if not key in DEFAULTS:
                raise ConfigError('%s line %i: unknown key %r' % (fn, i+1, key))
            typ = DEFAULTS[key][0]
            try:
                cfg[key] = typ(val)
            except ValueError:
                raise ConfigError('%s line %i: bad value %r for %s' %
                                  (fn, i+1, val, key))
    return cfg

def find_config_file():
    fn = os.environ.get('HORNBODY_CONFIG')
    if fn:
        if not os.path.exists(fn):
            raise ConfigError('HORNBODY_CONFIG points to missing file %s' % fn)
        return fn
    searched = []
    dirnm = os.path.dirname(os.path.abspath(__file__))
    for i in range(3):
        pth = os.path.join(dirnm, 'etc', 'hornbody.cfg')
        if os.path.exists(pth):
            return pth
        searched.append(pth)
        dirnm = os.path.dirname(dirnm)
    logdebug('No config file found; searched', searched)
    return None

def get_config():
    fn = find_config_file()
    if fn is None:
        cfg = default_config()
    else:
        logdebug('Reading config', fn)
        cfg = read_config(fn)
    if os.environ.get('HORNBODY_THREADS'):
        cfg['threads'] = threads_from_env()
    return cfg
