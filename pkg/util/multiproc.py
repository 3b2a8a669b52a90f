# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
import os
import multiprocessing

from hornbody.util.log import logdebug, logwarn

def threads_from_env(requested=None):
    '''
    Returns the number of workers to use.  HORNBODY_THREADS, when set,
    caps the requested count (or supplies it when none was requested).
    '''
    val = os.environ.get('HORNBODY_THREADS')
    if val is None or val == '':
        return requested or 1
    try:
        n = int(val)
    except ValueError:
        raise ValueError('HORNBODY_THREADS must be a positive integer, got %r' % val)
    if n < 1:
        raise ValueError('HORNBODY_THREADS must be a positive integer, got %r' % val)
    if requested is None:
        return n
    return max(1, min(requested, n))

class funcwrapper(object):
    # logs the failing job before the pool re-raises in the parent
    def __init__(self, func):
        self.func = func

    def __call__(self, *X):
        try:
            return self.func(*X)
        except:
            import traceback
            logwarn('Worker job', getattr(self.func, '__name__', self.func), 'failed')
            logwarn('  exception:', traceback.format_exc())
            raise

class multiproc(object):
    '''
    A thin wrapper around multiprocessing.Pool; with nthreads == 1
    everything runs in-process and no pool is created.
    '''
    def __init__(self, nthreads=1):
        self.nthreads = nthreads
        if nthreads == 1:
            self.pool = None
        else:
            logdebug('Starting pool with', nthreads, 'workers')
            self.pool = multiprocessing.Pool(nthreads)

    def map(self, f, args, chunksize=1):
        '''
        [f(x) for x in args], in order.
        '''
        if self.pool:
            return self.pool.map(funcwrapper(f), args, chunksize)
        return list(map(f, args))

    def close(self):
        if self.pool is not None:
            self.pool.close()
            self.pool.join()
            self.pool = None
