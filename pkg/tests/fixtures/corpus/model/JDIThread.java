package org.eclipse.jdt.internal.debug.core.model;

import org.eclipse.debug.core.DebugEvent;
import org.eclipse.debug.core.DebugException;
import org.eclipse.jdt.internal.debug.core.EventDispatcher;

/**
 * Models a thread on the target VM and brokers evaluations that must run on
 * it.
 */
public class JDIThread {

    private boolean fSuspended;
    private boolean fPerformingEvaluation;

    public boolean isSuspended() {
        return fSuspended;
    }

    public void runEvaluation(Runnable evaluation) {
        if (!fSuspended) {
            return;
        }
        fPerformingEvaluation = true;
        try {
            evaluation.run();
        } finally {
            fPerformingEvaluation = false;
        }
    }

    public boolean isPerformingEvaluation() {
        return fPerformingEvaluation;
    }

    public void resume() {
        fSuspended = false;
    }

    public void suspend() {
        fSuspended = true;
    }
}
