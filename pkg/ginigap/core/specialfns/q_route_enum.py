from enum import Enum


class QRouteEnum(Enum):
    SERIES = "series"
    CONTOUR = "contour"
    AUTO = "auto"
