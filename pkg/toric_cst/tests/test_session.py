import logging

import pytest
from hamcrest import *

from toric_cst import log
from toric_cst.command import COMMAND_STAGE, Command
from toric_cst.exceptions import CommandExecutionFailureException, ShapeMismatchException
from toric_cst.session import Session


def _fail_with(exception):
    def func():
        raise exception
    return func


def test_available_stages():
    assert_that(COMMAND_STAGE.get_available_stages(), has_items('phantom', 'reconstruct', 'kernel-check', 'slice'))
    with pytest.raises(AssertionError):
        Command(name='x', stage='unknown', func=lambda: None)


def test_execute_records_timings(session):
    command = Command(name='sum', stage=COMMAND_STAGE.METRICS, func=lambda a, b=0: a + b)
    assert_that(session.execute(command, 1, b=2), equal_to(3))
    session.execute(command, 1)
    assert_that(session.timings, has_key('sum'))
    assert_that(session.timings['sum'], greater_than_or_equal_to(0.0))
    assert_that(repr(command), equal_to('<Command name="sum" stage="metrics">'))


def test_execute_wraps_foreign_numerical_errors(session):
    with pytest.raises(CommandExecutionFailureException):
        session.execute(Command(name='bad', stage=COMMAND_STAGE.METRICS, func=_fail_with(ValueError('nan'))))
    with pytest.raises(ShapeMismatchException):
        session.execute(Command(name='bad', stage=COMMAND_STAGE.METRICS, func=_fail_with(ShapeMismatchException())))
    assert_that(session.timings, has_key('bad'))


def test_threads_default_to_the_environment(run_config, monkeypatch):
    monkeypatch.setenv('TORIC_CST_THREADS', '3')
    assert_that(Session(run_config).threads, equal_to(3))
    assert_that(Session(run_config, threads=5).threads, equal_to(5))
    monkeypatch.setenv('TORIC_CST_CACHE_DIR', '/tmp/toric-cache')
    assert_that(Session(run_config).cache_dir, equal_to('/tmp/toric-cache'))


def test_log_configuration():
    log.configure(quiet=True)
    assert_that(log.logger.level, equal_to(logging.WARNING))
    log.configure(json_log=True)
    assert_that(log.handler.formatter, instance_of(log.JsonFormatter))
    record = logging.LogRecord('toric_cst.test', logging.INFO, __file__, 1, 'hello %s', ('world',), None)
    assert_that(log.handler.formatter.format(record), contains_string('"message": "hello world"'))
    log.configure()
