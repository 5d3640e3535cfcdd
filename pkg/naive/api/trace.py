"""
This module contains the evaluation trace returned by
:func:`naive.api.engine.explain`.
"""


class TraceNode(object):
    """
    Represents the evaluation of one variable at one time.

    Trace nodes form a tree: the children of a node are the evaluations its
    procedure triggered, in evaluation order.
    """
    def __init__(self, variable, time, procedure=None, branch=None,
                 cache_hit=False, summary=''):
        #: Name of the evaluated variable
        self.variable = variable
        #: Time spec (as text) the variable was evaluated for
        self.time = time
        #: Variable kind for data and constants, procedure keyword otherwise
        self.procedure = procedure
        #: 1 based index of the branch taken (1 is the primary procedure)
        self.branch = branch
        #: True when the density came from the cache
        self.cache_hit = cache_hit
        #: short description of the resulting density
        self.summary = summary
        #: Possible list of children
        self.children = []

    def add_child(self, node):
        """
        Adds a child node
        """
        self.children.append(node)
        return node

    def walk(self):
        """
        Iterates over the tree, depth first, parents before children.
        """
        yield self
        for child in self.children:
            for node in child.walk():
                yield node

    def find(self, variable):
        """
        Returns the first node of the tree evaluating ``variable``, or None.
        """
        for node in self.walk():
            if node.variable == variable:
                return node
        return None

    def leaves(self):
        return [n for n in self.walk() if not n.children]

    def to_dict(self):
        """
        Serializes a trace to a dictionary, ready for json.

        Children are serialised recursively.
        """
        ddict = {'variable': self.variable, 'time': self.time,
                 'procedure': self.procedure, 'branch': self.branch,
                 'cache_hit': self.cache_hit, 'summary': self.summary,
                 'children': []}
        for child in self.children:
            ddict['children'].append(child.to_dict())
        return ddict

    @staticmethod
    def from_dict(ddict):
        """
        Deserializes a trace from a simple dict.
        """
        node = TraceNode(ddict['variable'], ddict['time'],
                         ddict['procedure'], ddict['branch'],
                         ddict['cache_hit'], ddict['summary'])
        for child_dict in ddict['children']:
            node.children.append(TraceNode.from_dict(child_dict))
        return node

    def render(self, indent=0):
        """
        Renders the tree as indented text, one node per line::

            CurrentWeight @ 2000-01-01T10:00:00+00:00 nearest_obs (1) ...
        """
        text = '%s%s @ %s' % ('  ' * indent, self.variable, self.time)
        if self.procedure:
            text += ' %s' % self.procedure
        if self.branch is not None:
            text += ' (%d)' % self.branch
        text += ' [cache hit]' if self.cache_hit else ''
        if self.summary:
            text += ': %s' % self.summary
        lines = [text]
        for child in self.children:
            lines.append(child.render(indent + 1))
        return '\n'.join(lines)

    def __eq__(self, other):
        return isinstance(other, TraceNode) and \
            self.to_dict() == other.to_dict()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'TraceNode(%r, %r, %r, %r)' % (
            self.variable, self.time, self.procedure, self.branch)
