"""
This package contains the knowledge bases shipped with naive:

    - ``weight``: current body weight from reported weights, with a linear
      fit, a fluid balance model and the whole range as alternates
    - ``glucose``: serum glucose from two independent tests and its
      classification
    - ``intake``: total fluid intake as the sum of oral and intravenous
      intakes
    - ``trend``: weight trend from the weight known around an instant

"""
import os


NAMES = ('weight', 'glucose', 'intake', 'trend')


def path(name):
    """
    Returns the path of a shipped knowledge base.

    :param name: one of :data:`NAMES` (with or without the ``.nkb``
        extension)
    """
    if name.endswith('.nkb'):
        name = name[:-4]
    if name not in NAMES:
        raise ValueError('unknown fixture %r (expected one of %s)' % (
            name, ', '.join(NAMES)))
    return os.path.join(os.path.dirname(os.path.abspath(__file__)),
                        name + '.nkb')
