"""
utils/threading.py

This module runs independent computations on a shared pool of worker threads. Parameter
sweeps submit one task per sample and collect the results in submission order, so reports
do not depend on which worker finishes first.

The pool is created on first use with `Settings.workers` threads, so LEAFSPACE_WORKERS from
the environment or a `.env` file goes through the same validation as every other setting.

Functions:
    run_in_thread - Runs a specified function in a background thread and returns its Future.
    map_in_threads - Applies a function to every item and returns the results in input order.
    shutdown_executor - Shuts down the thread pool executor.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor

from utils.config import load_settings

# Thread pool executor to reuse threads, created lazily by _get_executor
executor = None
_executor_lock = threading.Lock()


def _get_executor():
    global executor
    with _executor_lock:
        if executor is None:
            workers = load_settings().workers
            logging.debug(f"Starting thread pool with {workers} workers.")
            executor = ThreadPoolExecutor(max_workers=workers)
        return executor


def _submit_task(target_func, *args, **kwargs):
    """
    A helper function to submit a task to the thread pool executor.

    Returns:
        Future: A Future object representing the execution of the function, or None if the
        executor refused the task.
    """
    try:
        return _get_executor().submit(target_func, *args, **kwargs)
    except Exception as e:
        logging.error(f"Failed to submit task: {e}", exc_info=True)
        return None


def run_in_thread(target_func, *args, **kwargs):
    """
    Runs the specified function in a separate background thread using ThreadPoolExecutor.

    Returns:
        Future: A Future object representing the execution of the function.
    """
    logging.debug(f"Running function '{target_func.__name__}' in a worker thread.")
    return _submit_task(target_func, *args, **kwargs)


def map_in_threads(target_func, items, timeout=None):
    """
    Applies `target_func` to every item on the pool and returns the results in input order.

    Tasks the executor refuses (for example after shutdown) are run in the calling thread.
    Exceptions raised by a task propagate to the caller.

    Args:
        target_func (function): Function of one argument.
        items (iterable): Inputs.
        timeout (float, optional): Per-result timeout in seconds.
    """
    items = list(items)
    futures = [run_in_thread(target_func, item) for item in items]
    results = []
    for item, future in zip(items, futures):
        if future is None:
            logging.warning(f"Executor unavailable; running '{target_func.__name__}' inline.")
            results.append(target_func(item))
        else:
            results.append(future.result(timeout=timeout))
    return results


def shutdown_executor(wait=True):
    """
    Shuts down the thread pool executor gracefully, ensuring no new tasks are scheduled and existing tasks are completed.
    A later task starts a fresh pool.

    Args:
        wait (bool): If True, wait for tasks to complete before shutting down.
    """
    global executor
    with _executor_lock:
        if executor is None:
            return
        logging.info("Shutting down thread pool executor.")
        executor.shutdown(wait=wait)
        executor = None
    logging.info("Thread pool executor has been shut down.")
