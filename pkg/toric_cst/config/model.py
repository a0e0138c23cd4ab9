from toric_cst.config import Section
from toric_cst.exceptions import FieldValidationException, UnknownConfigKeyException


class SectionRecord:
    """
    Values of one configuration section; subclasses bind ``section`` and may add ``validate``
    """
    section: Section = None

    def __init__(self, **values):
        """
        Assembles the record from the section fields
        :param values: raw values, unknown keys are rejected
        """
        unknown = set(values) - set(self.section.fields)
        if unknown:
            raise UnknownConfigKeyException('Unknown keys in "{}" section: {}'.format(
                self.section.name, sorted(unknown)))
        for field in self.section.fields.values():
            value = values.get(field.name, None)
            if value is None:
                value = field.default
            # convert value if it is set
            if value is not None:
                value = field.from_raw(value)
            setattr(self, self._attribute_name(field.name), value)
        self._validate_values()
        self.validate()

    @staticmethod
    def _attribute_name(field_name: str) -> str:
        # "lambda" is a keyword
        return 'lambda_' if field_name == 'lambda' else field_name

    def _validate_values(self):
        """
        Check record`s values
        """
        for field_name, field in self.section.fields.items():
            if not field.optional and getattr(self, self._attribute_name(field_name)) is None:
                raise FieldValidationException(
                    'Null value in "{}.{}" violates not-null constraint'.format(self.section.name, field_name))

    def validate(self):
        pass

    def serialize(self):
        """
        Serialize record values, empty values are skipped
        :return:
        """
        data = {}
        for field_name, field in self.section.fields.items():
            raw_value = field.to_raw(getattr(self, self._attribute_name(field_name)))
            if raw_value is not None:
                data[field_name] = raw_value
        return data

    def __eq__(self, other):
        return type(self) is type(other) and self.serialize() == other.serialize()

    def __repr__(self):
        return '<{} of "{}" section>'.format(type(self).__name__, self.section.name)
