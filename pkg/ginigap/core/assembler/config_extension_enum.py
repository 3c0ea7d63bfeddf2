from enum import Enum


class ConfigExtensionEnum(Enum):
    YAML = "yaml"
    JSON = "json"
