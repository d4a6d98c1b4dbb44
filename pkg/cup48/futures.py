# BSD 3-Clause License; see LICENSE

"""
Executors for the runs of a Monte Carlo batch.

* :doc:`cup48.futures.TrivialExecutor` plays each run as soon as it is
  submitted, on the calling thread. It is the default
  (``cup48.batch_executor``).
* :doc:`cup48.futures.ThreadPoolExecutor` hands runs to a fixed set of
  :doc:`cup48.futures.Worker` threads.

Both return futures with a ``result()`` method, and so do Python's own
``concurrent.futures`` executors, which :doc:`cup48.montecarlo.run_batch`
also accepts. Each run carries its own random stream, so which thread plays
it has no effect on its outcome; :doc:`cup48.futures.in_order` collects the
results by submission order.
"""

from __future__ import absolute_import

import os
import queue
import sys
import threading


class DoneRun(object):
    """
    A future whose value was computed when it was made.
    """

    __slots__ = ("_value",)

    def __init__(self, value):
        self._value = value

    def done(self):
        return True

    def result(self, timeout=None):
        return self._value


class TrivialExecutor(object):
    """
    Runs each submitted task immediately and returns a
    :doc:`cup48.futures.DoneRun`. An exception in the task propagates out of
    ``submit``.
    """

    def __repr__(self):
        return "<TrivialExecutor at 0x{0:012x}>".format(id(self))

    def __enter__(self):
        return self

    def __exit__(self, exception_type, exception_value, traceback):
        pass

    @property
    def num_workers(self):
        return 1

    def submit(self, task, *args):
        return DoneRun(task(*args))

    def shutdown(self, wait=True):
        pass


class PendingRun(object):
    """
    Args:
        task (function): Called as ``task(*args)`` on a worker thread.
        args (tuple): Its arguments.

    Filled in by a :doc:`cup48.futures.Worker`. If the task raised, the same
    exception is raised again by ``result()`` on the caller's thread.
    """

    __slots__ = ("_task", "_args", "_ready", "_value", "_error")

    def __init__(self, task, args):
        self._task = task
        self._args = args
        self._ready = threading.Event()
        self._value = None
        self._error = None

    def done(self):
        return self._ready.is_set()

    def result(self, timeout=None):
        if not self._ready.wait(timeout=timeout):
            raise TimeoutError("run not finished after {0} s".format(timeout))
        if self._error is not None:
            exception_value, traceback = self._error
            raise exception_value.with_traceback(traceback)
        return self._value

    def play(self):
        try:
            self._value = self._task(*self._args)
        except Exception:
            self._error = sys.exc_info()[1:]
        finally:
            self._task = self._args = None
            self._ready.set()


class Worker(threading.Thread):
    """
    Args:
        inbox (``queue.Queue``): Source of :doc:`cup48.futures.PendingRun`
            objects; None stops the worker.

    Daemon thread of a :doc:`cup48.futures.ThreadPoolExecutor`.
    """

    def __init__(self, inbox, name):
        super(Worker, self).__init__(name=name)
        self.daemon = True
        self._inbox = inbox

    def run(self):
        for pending in iter(self._inbox.get, None):
            pending.play()


class ThreadPoolExecutor(object):
    """
    Args:
        num_workers (None or int): Number of threads; ``os.cpu_count()`` if
            None.

    A fixed pool of :doc:`cup48.futures.Worker` threads sharing one queue.
    """

    def __init__(self, num_workers=None):
        if num_workers is None:
            num_workers = os.cpu_count() or 1
        if num_workers < 1:
            raise ValueError(
                "num_workers must be at least 1, not {0}".format(repr(num_workers))
            )
        self._inbox = queue.Queue()
        self._closed = False
        self._workers = [
            Worker(self._inbox, "cup48-worker-{0}".format(i))
            for i in range(num_workers)
        ]
        for worker in self._workers:
            worker.start()

    def __repr__(self):
        return "<ThreadPoolExecutor ({0} workers) at 0x{1:012x}>".format(
            len(self._workers), id(self)
        )

    def __enter__(self):
        return self

    def __exit__(self, exception_type, exception_value, traceback):
        self.shutdown()

    @property
    def num_workers(self):
        return len(self._workers)

    @property
    def workers(self):
        return list(self._workers)

    def submit(self, task, *args):
        if self._closed:
            raise RuntimeError("cannot submit to a ThreadPoolExecutor after shutdown")
        pending = PendingRun(task, args)
        self._inbox.put(pending)
        return pending

    def shutdown(self, wait=True):
        """
        Lets queued runs finish, then stops every worker. Safe to call twice.
        """
        if not self._closed:
            self._closed = True
            for _ in self._workers:
                self._inbox.put(None)
        if wait:
            for worker in self._workers:
                worker.join()


def in_order(futures):
    """
    Yields ``(index, result)`` for each future in submission order, waiting
    on each one in turn.
    """
    for index, future in enumerate(futures):
        yield index, future.result()
