# Cli flag name (without dashes, `-` replaced by `_`) to raw value
FlagMap = dict[str, str]
