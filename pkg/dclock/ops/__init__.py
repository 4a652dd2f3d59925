"""Command modules of the dclock CLI; each 'ops_*' module registers its sub commands when it is imported"""

import importlib
import os
import pkgutil

_ops_module_prefix = 'ops_'


def list_ops():
    """Names of the command modules in this package, sorted so that sub commands always register in the same order"""
    return sorted(name for _, name, ispkg in pkgutil.iter_modules([os.path.dirname(__file__)])
                  if not ispkg and name.startswith(_ops_module_prefix))


def import_ops():
    """Import all command modules in the current package and return them"""
    return [importlib.import_module('.' + name, __name__) for name in list_ops()]
