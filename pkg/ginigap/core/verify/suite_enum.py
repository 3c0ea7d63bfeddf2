from enum import Enum


class SuiteEnum(Enum):
    IDENTITIES = 'identities'
    FORMS = 'forms'
    RECURRENCES = 'recurrences'
    ROUTES = 'routes'
    INTEGRALS = 'integrals'
    PAINLEVE = 'painleve'
    MC = 'mc'
