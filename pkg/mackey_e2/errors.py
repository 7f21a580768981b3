"""
Exception types shared by the library and the command-line interface.
"""


class MackeyE2Error(Exception):
    """
    Base class for all errors raised by mackey_e2.
    """


class InputError(MackeyE2Error, ValueError):
    """
    Malformed user input: group specs, G-set literals, JSON documents.
    """


class OrderCapExceededError(InputError):
    """
    A group or subgroup is larger than the configured order bound.
    """

    def __init__(self, order, cap):
        super().__init__(f"Group order {order} exceeds the configured cap of {cap}.")
        self.order = order
        self.cap = cap


class VerificationError(MackeyE2Error):
    """
    An exact check failed. ``failures`` lists the failed identities.
    """

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = list(failures or [])

    def __str__(self):
        text = super().__str__()
        if not self.failures:
            return text
        shown = "\n  ".join(self.failures[:10])
        more = len(self.failures) - 10
        suffix = f"\n  ... and {more} more" if more > 0 else ""
        return f"{text}\n  {shown}{suffix}"
