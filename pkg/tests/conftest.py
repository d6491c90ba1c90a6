import glob
import json
import os

import jsonschema
import pytest
from referencing import Registry, Resource

import chargedbh

SCHEMA_DIR = os.path.join(os.path.dirname(chargedbh.__file__), "schemas")


def _registry():
    resources = []
    for fn in glob.glob(os.path.join(SCHEMA_DIR, "*.json")):
        contents = json.load(open(fn))
        resources.append((contents["$id"], Resource.from_contents(contents)))
    return Registry().with_resources(resources)


_REGISTRY = _registry()


def validate_document(document, schema_name):
    schema = json.load(open(os.path.join(SCHEMA_DIR, schema_name)))
    jsonschema.Draft7Validator(schema, registry=_REGISTRY).validate(document)


@pytest.fixture
def schema_validator():
    return validate_document
