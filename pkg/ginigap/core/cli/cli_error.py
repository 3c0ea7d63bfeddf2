from ginigap.core.error.error import ConfigError


class CLIError(ConfigError):
    pass
