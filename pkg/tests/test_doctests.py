import doctest
import importlib
import pkgutil

import pytest

import rootperturb

MODULES = [m.name for m in pkgutil.iter_modules(rootperturb.__path__, "rootperturb.")
           if m.name != "rootperturb.__main__"]


@pytest.mark.parametrize("name", MODULES)
def test_docstring_examples(name):
    result = doctest.testmod(importlib.import_module(name))
    assert result.failed == 0
