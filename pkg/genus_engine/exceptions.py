#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Genus Engine Exceptions
Error hierarchy shared by the library modules and the CLI
"""


class GenusEngineError(Exception):
    """Base class for every error raised by genus_engine"""

    code = "genus_engine_error"

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


class ValidationError(GenusEngineError):
    """Invalid index vector, divisor class or parameter"""

    code = "validation_error"


class NotGeometricError(ValidationError):
    """Index vector whose n is not a positive integer (even for odd g)"""

    code = "not_geometric"


class DomainError(GenusEngineError):
    """Bound function evaluated where it is undefined"""

    code = "domain_error"


class ConsistencyError(GenusEngineError):
    """Two equivalent formulas disagreed; indicates a bug, never bad input"""

    code = "consistency_error"


class SurfaceMismatchError(ValidationError):
    """Divisor classes living on different surfaces"""

    code = "surface_mismatch"


class ConfigError(GenusEngineError):
    code = "config_error"


class ParseError(GenusEngineError):
    code = "parse_error"
