/**
 * One mutating request in flight per session; later actions wait their
 * turn instead of racing.  A failed action rejects its own promise but
 * never stalls the queue.
 */

export class ActionQueue {
  private tail: Promise<void> = Promise.resolve();
  private depth = 0;

  /** Number of actions queued or running. */
  get pending(): number {
    return this.depth;
  }

  push<T>(action: () => Promise<T>): Promise<T> {
    this.depth += 1;
    const result = this.tail.then(action);
    this.tail = result.then(
      () => {
        this.depth -= 1;
      },
      () => {
        this.depth -= 1;
      }
    );
    return result;
  }
}
