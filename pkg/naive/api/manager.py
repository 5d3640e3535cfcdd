"""
This module contains the Manager API.

"""
import weakref


class Manager(object):
    """
    A manager manages a specific aspect of an EvalContext instance:
        - observation store (report/withdraw observations, time lookups)
        - density cache (store, lookup and invalidate evaluated densities)

    Managers are created internally when you create an EvalContext. You
    interact with them later, e.g. when you want to inspect the observations
    of a datum or the cached densities.

    ::
        ctx = EvalContext(kb)

        # use the store to inspect observations
        ctx.store.instants('ReportedWeight')

        # use the cache to list the cached densities
        ctx.cache.keys()

    """

    @property
    def context(self):
        """
        Return a reference to the parent evaluation context.
        """
        return self._context()

    def __init__(self, context):
        """
        :param context: EvalContext instance to control
        """
        self._context = weakref.ref(context)
