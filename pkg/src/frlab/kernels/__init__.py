"""Hot table kernels, with implementation selection at import time.

The compiled extension (``frlab.kernels._fast``, built from Cython) is used
when available; otherwise the pure-Python twins in ``pyops`` take over.
Set ``FRLAB_KERNEL=py`` to force the fallback or ``FRLAB_KERNEL=c`` to
require the extension.
"""

from __future__ import annotations

import os

from . import pyops

_choice = os.environ.get("FRLAB_KERNEL", "auto").lower()

if _choice == "py":
    _impl = pyops
elif _choice == "c":
    from . import _fast as _impl  # noqa: F401  (ImportError here is intentional)
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = pyops

IMPL = _impl.IMPL
element_orders = _impl.element_orders
closure = _impl.closure
extend_subgroup = _impl.extend_subgroup
orbits = _impl.orbits
centralizer_section = _impl.centralizer_section
hom_extend = _impl.hom_extend
coset_ids = _impl.coset_ids
subgroup_table = _impl.subgroup_table

__all__ = [
    "IMPL",
    "element_orders",
    "closure",
    "extend_subgroup",
    "orbits",
    "centralizer_section",
    "hom_extend",
    "coset_ids",
    "subgroup_table",
    "pyops",
]
