# -*- coding: utf-8 -*-
"""
This scripts configures the test suite: it sets up the logging module and
writes a banner with the test name before each test.
"""
import logging


# -------------------
# Setup runtest
# -------------------
def pytest_runtest_setup(item):
    """
    Log the test method name so that pytest.log is easy to browse.

    :param item: test item to run
    """
    module, line, method = item.location
    module = module.replace('.py', '.')
    title = module + method
    logging.info("------------------- %s -------------------", title)


# -------------------
# Setup logging
# -------------------
logging.basicConfig(level=logging.DEBUG,
                    filename='pytest.log',
                    filemode='w')
