# -----------------------------------------------------------------------------
# Copyright (c) robostate contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# -----------------------------------------------------------------------------


class RobotStateError(Exception):
    """ Base class for every domain error. `code` is stable and machine-readable. """

    code = 'robostate-error'

    def __init__(self, message, **details):
        self.details = details
        super().__init__(message)

    def to_dict(self):
        return {'code': self.code, 'message': str(self), **self.details}


class ParseError(RobotStateError):
    code = 'parse-error'

    def __init__(self, message, field=None, line=None):
        location = []
        if line is not None:
            location.append('line {}'.format(line))
        if field is not None:
            location.append('field `{}`'.format(field))
        if location:
            message = '{} ({})'.format(message, ', '.join(location))
        super().__init__(message, field=field, line=line)


class CycleDetectedError(RobotStateError):
    code = 'cycle-detected'


class DanglingReferenceError(RobotStateError):
    code = 'dangling-reference'


class DimensionMismatchError(RobotStateError):
    code = 'dimension-mismatch'


class InvalidPartError(RobotStateError):
    code = 'invalid-part'


class DegenerateParamError(RobotStateError):
    code = 'degenerate-param'


class ReferenceBehindCameraError(RobotStateError):
    code = 'reference-behind-camera'


class NoValidUpdateError(RobotStateError):
    code = 'no-valid-update'


class EmptyProjectionError(RobotStateError):
    code = 'empty-projection'


class AspectMismatchError(RobotStateError):
    code = 'aspect-mismatch'


class DegenerateDetectionError(RobotStateError):
    code = 'degenerate-detection'


class MissingCorrespondencesError(RobotStateError):
    code = 'missing-correspondences'


class EmptyPointSetError(RobotStateError):
    code = 'empty-point-set'


class EmptyInputError(RobotStateError):
    code = 'empty-input'


class NoVisibleKeypointsError(RobotStateError):
    code = 'no-visible-keypoints'


class FrustumRejectionError(RobotStateError):
    code = 'frustum-rejection-exhausted'


class SchemaVersionError(RobotStateError):
    code = 'schema-version-mismatch'


class RefinementError(RobotStateError):
    """ Raised when the render & compare loop aborts. Carries the partial trace. """

    code = 'refinement-failed'

    def __init__(self, iteration, cause, trace=None):
        self.iteration = iteration
        self.cause = cause
        self.trace = trace
        message = 'refinement aborted at iteration {}: [{}] {}'.format(
            iteration, getattr(cause, 'code', type(cause).__name__), cause)
        super().__init__(message, iteration=iteration, cause=getattr(cause, 'code', None))
