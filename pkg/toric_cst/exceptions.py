class ToricCSTException(Exception):
    pass


class DomainException(ToricCSTException):
    pass


class ConfigurationException(ToricCSTException):
    pass


class UnknownConfigKeyException(ConfigurationException):
    pass


class ImproperlyConfiguredFieldException(ConfigurationException):
    pass


class FieldValidationException(ConfigurationException):
    pass


class ShapeMismatchException(ToricCSTException):
    pass


class NumericalFailureException(ToricCSTException):
    pass


class SingularSystemException(NumericalFailureException):
    pass


class DegenerateGradientException(NumericalFailureException):
    pass


class NoiseException(NumericalFailureException):
    pass


class MetricException(NumericalFailureException):
    pass


class FileFormatException(ToricCSTException):
    pass


class FormatVersionException(FileFormatException):
    pass


class CommandExecutionFailureException(ToricCSTException):
    pass
