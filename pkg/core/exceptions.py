# core/exceptions.py - Exception hierarchy shared by every app


class DrwlabError(Exception):
    """Base class for all library errors"""
    kind = 'error'

    def to_dict(self):
        return {'error': self.kind, 'message': str(self)}


class ValidationError(DrwlabError):
    """Invalid input value"""
    kind = 'validation'


class ContextMismatch(DrwlabError):
    """Operands live over different (p, n) or in different degrees"""
    kind = 'context_mismatch'


class DegreeError(DrwlabError):
    """Form degrees do not fit the requested operation"""
    kind = 'degree'


class NotInImage(DrwlabError):
    """Cartier input is not in the image of Frobenius"""
    kind = 'not_in_image'


class WindowTooSmall(DrwlabError):
    """A window clips generators the requested module needs"""
    kind = 'window_too_small'


class ResourceError(DrwlabError):
    """Term or coordinate budget exceeded"""
    kind = 'resource'


class ParseError(DrwlabError):
    """Syntax error in an element expression"""
    kind = 'parse'

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)

    def to_dict(self):
        data = super().to_dict()
        if self.line is not None:
            data['line'] = self.line
            data['column'] = self.column
        return data


class SearchExhausted(DrwlabError):
    """A bounded search ended without a verified answer"""
    kind = 'search_exhausted'
