# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
__version__ = '0.3.1'
