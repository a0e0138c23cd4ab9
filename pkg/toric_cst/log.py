import json
import logging
import os

handler = logging.StreamHandler()
handler.setLevel(logging.DEBUG)

logger = logging.getLogger('toric_cst')
logger.addHandler(handler)
logger.setLevel(os.environ.get('TORIC_CST_LOG_LEVEL', 'INFO').upper())


class JsonFormatter(logging.Formatter):
    def format(self, record):
        return json.dumps({
            'time': self.formatTime(record),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage()
        })


def configure(quiet: bool = False, json_log: bool = False):
    """
    Adjusts the package handler for command line runs
    :param quiet: only warnings and errors are emitted
    :param json_log: one JSON object per record
    """
    logger.setLevel(logging.WARNING if quiet else os.environ.get('TORIC_CST_LOG_LEVEL', 'INFO').upper())
    if json_log:
        handler.setFormatter(JsonFormatter())
    else:
        handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
