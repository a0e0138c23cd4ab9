from collections import OrderedDict
from typing import List

from toric_cst.config.fields import BaseField


class Section:
    """
    Named group of configuration fields, one per top-level key of the run configuration
    """
    name = None
    _fields = None

    def __init__(self, name: str, fields: List[BaseField]):
        self.name = name
        self._fields = OrderedDict([(x.name, x) for x in fields])

    @property
    def fields(self):
        return self._fields

    def __repr__(self):
        return '<Configuration section "{}">'.format(self.name)
