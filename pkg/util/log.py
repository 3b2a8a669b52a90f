# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
Logging helpers taking print-style arguments:

    loginfo('Sampled', count, 'points of', spec)

Everything goes to the "hornbody" logger.
'''
import logging
logger = logging.getLogger('hornbody')

def _getstr(args):
    return ' '.join(str(a) for a in args)

def loginfo(*args):
    logger.info(_getstr(args))

def logdebug(*args):
    logger.debug(_getstr(args))

def logwarn(*args):
    logger.warning(_getstr(args))

def setup_logging(verbose=False):
    '''
    Configures the root logger for command-line use.  Library code
    only ever logs; this is called from the scripts.
    '''
    logformat = '%(message)s'
    if verbose:
        logging.basicConfig(level=logging.DEBUG, format=logformat)
    else:
        logging.basicConfig(level=logging.INFO, format=logformat)
    logging.raiseExceptions = False
