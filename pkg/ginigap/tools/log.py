import os
from typing import Literal

from loguru import logger as loguru
from warepy import Singleton


class log(Singleton):
    """Logger tool responsible of writing all numerical runs to logs.

    Extra layer over `loguru.logger` keeping one file sink through the whole
    program, so library modules and the cli write to the same place. Every
    `configure` call replaces the file sink of the previous one.
    """
    native_log = loguru
    sink_id: int | None = None

    catch = native_log.catch

    debug = native_log.debug
    info = native_log.info
    warning = native_log.warning
    error = native_log.error

    @classmethod
    def bind(cls, **kwargs):
        return cls.native_log.bind(**kwargs)

    @classmethod
    def configure(
            cls,
            *,
            path: str,
            format: str,
            rotation: str,
            level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
            serialize: bool,
            delete_old: bool = False) -> int:
        """Point the file sink to `path` and return the new sink id.

        Remove previous log file if `delete_old=True`; only files with `.log`
        extension are removed.
        """
        if cls.sink_id is not None:
            cls.native_log.remove(cls.sink_id)
            cls.sink_id = None

        if (
                delete_old
                and os.path.isfile(path)
                and path.split('.')[-1] == 'log'):
            os.remove(path)

        cls.sink_id = cls.native_log.add(
            path,
            format=format,
            level=level,
            compression="zip",
            rotation=rotation,
            serialize=serialize
        )
        return cls.sink_id
