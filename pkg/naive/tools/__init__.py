"""
This package contains the command line surface of naive:

- records: decoder of the CSV observation files
- cli: the ``naive`` command (validate, eval, check, trend and session)

"""
