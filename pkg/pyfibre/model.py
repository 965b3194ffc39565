from typing import Optional

from pydantic import BaseModel, ValidationError

from pyfibre.errors import FibreError
from pyfibre.util import to_camel


class FibreModel(BaseModel):
    """ Base of all pyfibre values: immutable, hashable, camelCase in JSON. """

    class Config:
        frozen = True
        alias_generator = to_camel
        allow_population_by_field_name = True
        underscore_attrs_are_private = True
        arbitrary_types_allowed = True
        copy_on_model_validation = 'none'

    def __init__(self, **data):
        # Validators raise package errors, which pydantic wraps, unwrap them back.
        try:
            super().__init__(**data)
        except ValidationError as e:
            error = _find_fibre_error(e.raw_errors)
            if error is not None: raise error from None
            raise

    def to_json(self, **kwargs) -> str:
        return self.json(by_alias=True, **kwargs)


def _find_fibre_error(errors) -> Optional[FibreError]:
    for error in errors:
        if isinstance(error, (list, tuple)):
            found = _find_fibre_error(error)
        else:
            exc = getattr(error, 'exc', None)
            if isinstance(exc, FibreError): return exc
            found = _find_fibre_error(exc.raw_errors) if isinstance(exc, ValidationError) else None
        if found is not None: return found
    return None
