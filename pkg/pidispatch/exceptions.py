#*************************************************************************************
# Module: exceptions
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/02/2026   Initial Release
#
# File Description
# ------------------------------------------------------------------------------------
# Contains the exception hierarchy raised across pidispatch. Every error derives from
# DispatchError so the command line can report any library failure with a single
# handler. Messages are built from the message constants below.
#*************************************************************************************

# Initializing error messages.
INPUT_DOMAIN_MESSAGE = 'Input Domain Error: {0}'
CONFIG_MESSAGE = 'Config Error: [{0}] {1}: {2}'
INFEASIBLE_DEFICIT_MESSAGE = 'Infeasible: load exceeds available supply by {0:.6g} kW.'
INFEASIBLE_SURPLUS_MESSAGE = 'Infeasible: minimum output exceeds load by {0:.6g} kW.'
NUMERICAL_MESSAGE = 'Numerical Error: lambda search did not converge after {0} iterations (residual {1:.3g} kW).'
HORIZON_MESSAGE = 'Horizon Error: timestep {0} is infeasible. {1}'
GENERATION_MESSAGE = 'Generation Error: labelling failed at step {0}. {1}'
SHAPE_MESSAGE = 'Shape Error: {0}'
STATE_MESSAGE = 'State Error: {0}'
PARSE_MESSAGE = 'Parse Error: line {0}: {1}'
MISSING_METADATA_MESSAGE = 'Missing Metadata: sidecar file {0} not found.'
MISSING_INPUT_MESSAGE = 'Missing Input: {0} does not exist.'
TRAINING_MESSAGE = 'Training Error: non-finite loss at epoch {0}.'
UNDEFINED_METRIC_MESSAGE = 'Undefined Metric: R2 is undefined for zero-variance column {0}.'


class DispatchError(Exception):
    """Base class for every error raised by pidispatch."""


class InputDomainError(DispatchError, ValueError):
    """An argument lies outside the domain of the operation."""

    def __init__(self, detail):
        super().__init__(INPUT_DOMAIN_MESSAGE.format(detail))


class ConfigError(InputDomainError):
    """A configuration file is unreadable or carries an invalid value."""

    def __init__(self, section, key, detail):
        DispatchError.__init__(self, CONFIG_MESSAGE.format(section, key, detail))
        self.section = section
        self.key = key


class InfeasibleError(DispatchError):
    """The load cannot be met within the units' effective bounds.

    Arguments
    ---------
    1. deficit {float} -- kW by which load exceeds total upper bound (0 if none).
    2. surplus {float} -- kW by which total lower bound exceeds load (0 if none).
    """

    def __init__(self, deficit=0.0, surplus=0.0, message=None):
        if message is None:
            if deficit > 0:
                message = INFEASIBLE_DEFICIT_MESSAGE.format(deficit)
            else:
                message = INFEASIBLE_SURPLUS_MESSAGE.format(surplus)
        super().__init__(message)
        self.deficit = deficit
        self.surplus = surplus


class NumericalError(DispatchError, ArithmeticError):

    def __init__(self, iterations, residual):
        super().__init__(NUMERICAL_MESSAGE.format(iterations, residual))
        self.iterations = iterations
        self.residual = residual


class HorizonError(InfeasibleError):
    """A timestep of a multi-step dispatch could not be solved."""

    def __init__(self, timestep, cause):
        super().__init__(
            deficit=getattr(cause, 'deficit', 0.0),
            surplus=getattr(cause, 'surplus', 0.0),
            message=HORIZON_MESSAGE.format(timestep, cause),
        )
        self.timestep = timestep


class GenerationError(DispatchError):

    def __init__(self, step, cause):
        super().__init__(GENERATION_MESSAGE.format(step, cause))
        self.step = step


class ShapeError(DispatchError, ValueError):

    def __init__(self, detail):
        super().__init__(SHAPE_MESSAGE.format(detail))


class StateError(DispatchError, RuntimeError):

    def __init__(self, detail):
        super().__init__(STATE_MESSAGE.format(detail))


class MissingContextError(StateError):
    """A penalty term needs context the caller did not supply."""


class ParseError(DispatchError, ValueError):

    def __init__(self, line, detail):
        super().__init__(PARSE_MESSAGE.format(line, detail))
        self.line = line


class MissingMetadataError(ParseError):

    def __init__(self, path):
        DispatchError.__init__(self, MISSING_METADATA_MESSAGE.format(path))
        self.line = None
        self.path = path


class MissingInputError(DispatchError, FileNotFoundError):

    def __init__(self, path):
        DispatchError.__init__(self, MISSING_INPUT_MESSAGE.format(path))
        self.path = path


class TrainingError(DispatchError):

    def __init__(self, epoch):
        super().__init__(TRAINING_MESSAGE.format(epoch))
        self.epoch = epoch


class UndefinedMetricError(DispatchError, ZeroDivisionError):

    def __init__(self, column):
        super().__init__(UNDEFINED_METRIC_MESSAGE.format(column))
        self.column = column
