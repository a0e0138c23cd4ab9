import datetime
from typing import Sequence

import dateparser

from toric_cst.exceptions import ImproperlyConfiguredFieldException, FieldValidationException, \
    UnknownConfigKeyException


class BaseField:
    type = None

    def __init__(self, name: str, optional: bool = False, default=None, **kwargs):
        if self.type is None:
            raise NotImplementedError('Attempted to instantiate abstract field class')
        self.name = name
        self.optional = optional
        self.default = default

    cast_func = None

    def from_raw(self, value):
        if self.cast_func is None:
            raise NotImplementedError
        try:
            return self.cast_func(value)
        except (TypeError, ValueError):
            raise FieldValidationException('"{}" field cannot take value {!r}'.format(self.name, value))

    def to_raw(self, value):
        if value is None:
            if self.optional:
                return None
            raise FieldValidationException('"{}" field is required'.format(self.name))
        return self._to_raw(value)

    def _to_raw(self, value):
        if self.cast_func is None:
            raise NotImplementedError
        return self.cast_func(value)


class NumberField(BaseField):
    type: str = 'number'
    cast_func = float

    def __init__(self, name: str, optional: bool = False, default=None, minimum: float = None,
                 exclusive_minimum: bool = False, **kwargs):
        self.minimum = minimum
        self.exclusive_minimum = exclusive_minimum
        super(NumberField, self).__init__(name, optional, default)

    def from_raw(self, value):
        if isinstance(value, bool):
            raise FieldValidationException('"{}" field expects a number, got {!r}'.format(self.name, value))
        value = super(NumberField, self).from_raw(value)
        if self.minimum is not None:
            if value < self.minimum or (self.exclusive_minimum and value == self.minimum):
                raise FieldValidationException('"{}" field must be {} {}, got {}'.format(
                    self.name, '>' if self.exclusive_minimum else '>=', self.minimum, value))
        return value


class IntegerField(NumberField):
    type: str = 'integer'
    cast_func = int

    def from_raw(self, value):
        if isinstance(value, float) and not value.is_integer():
            raise FieldValidationException('"{}" field expects an integer, got {!r}'.format(self.name, value))
        return super(IntegerField, self).from_raw(value)


class StringField(BaseField):
    type: str = 'string'
    cast_func = str

    def __init__(self, name: str, optional: bool = False, default=None, choices: Sequence[str] = None, **kwargs):
        if choices is not None and default is not None and default not in choices:
            raise ImproperlyConfiguredFieldException('"{}" default must be one of {}'.format(name, list(choices)))
        self.choices = tuple(choices) if choices else None
        super(StringField, self).__init__(name, optional, default)

    def from_raw(self, value):
        value = super(StringField, self).from_raw(value)
        if self.choices and value not in self.choices:
            raise FieldValidationException('"{}" field must be one of {}, got "{}"'.format(
                self.name, list(self.choices), value))
        return value


class ArrayField(BaseField):
    type: str = 'array'

    def __init__(self, name: str, optional: bool = False, default=None, item_field: BaseField = None,
                 length: int = None, **kwargs):
        self.item_field = item_field
        self.length = length
        super(ArrayField, self).__init__(name, optional, default)

    def from_raw(self, value):
        if not isinstance(value, (list, tuple)):
            raise FieldValidationException('"{}" field expects a list, got {!r}'.format(self.name, value))
        if self.length is not None and len(value) != self.length:
            raise FieldValidationException('"{}" field expects {} items, got {}'.format(
                self.name, self.length, len(value)))
        if self.item_field is None:
            return list(value)
        return [self.item_field.from_raw(item) for item in value]

    def _to_raw(self, value):
        if self.item_field is None:
            return list(value)
        return [self.item_field.to_raw(item) for item in value]


class ObjectField(BaseField):
    """
    Nested mapping validated against its own list of fields
    """
    type: str = 'object'

    def __init__(self, name: str, fields: Sequence[BaseField] = None, optional: bool = False, default=None,
                 **kwargs):
        self.fields = {field.name: field for field in fields} if fields else None
        super(ObjectField, self).__init__(name, optional, default)

    def from_raw(self, value):
        if not isinstance(value, dict):
            raise FieldValidationException('"{}" field expects an object, got {!r}'.format(self.name, value))
        if self.fields is None:
            return dict(value)
        unknown = set(value) - set(self.fields)
        if unknown:
            raise UnknownConfigKeyException('Unknown keys in "{}": {}'.format(self.name, sorted(unknown)))
        result = {}
        for field_name, field in self.fields.items():
            raw_value = value.get(field_name, field.default)
            if raw_value is None:
                if not field.optional:
                    raise FieldValidationException('"{}.{}" field is required'.format(self.name, field_name))
                result[field_name] = None
            else:
                result[field_name] = field.from_raw(raw_value)
        return result

    def _to_raw(self, value):
        if self.fields is None:
            return dict(value)
        return {name: self.fields[name].to_raw(item) for name, item in value.items() if item is not None}


class DateTimeField(BaseField):
    type: str = 'datetime'
    cast_func = datetime.datetime

    def from_raw(self, value):
        if isinstance(value, str):
            try:
                return datetime.datetime.fromisoformat(value)
            except ValueError:
                parsed = dateparser.parse(value)
            if parsed is None:
                raise FieldValidationException('"{}" field cannot parse {!r}'.format(self.name, value))
            return parsed
        if not isinstance(value, datetime.datetime):
            raise FieldValidationException('"{}" field expects a timestamp, got {!r}'.format(self.name, value))
        return value

    def _to_raw(self, value: datetime.datetime):
        return value.isoformat()
