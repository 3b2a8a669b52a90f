# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
# Lets the tests import "hornbody" from an uninstalled source tree: the
# package root is this directory.
import importlib.util
import os
import sys

def _register_source_tree():
    try:
        import hornbody
        return
    except ImportError:
        pass
    here = os.path.dirname(os.path.abspath(__file__))
    spec = importlib.util.spec_from_file_location(
        'hornbody', os.path.join(here, '__init__.py'), submodule_search_locations=[here])
    mod = importlib.util.module_from_spec(spec)
    sys.modules['hornbody'] = mod
    spec.loader.exec_module(mod)

_register_source_tree()
